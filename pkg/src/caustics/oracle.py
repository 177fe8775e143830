"""Brute-force validation of caustics by actual ray geometry.

Everything here works on concrete rays and polylines, independently of
the closed forms elsewhere in the package: families of rays are built
either from a curve plus a tilt field or by physically reflecting
horizontal light off a polyline mirror, envelopes are extracted by
intersecting nearby rays, and mirror feasibility (verticality, self
occlusion) is decided by direct monotonicity and ray-casting checks.
The module exists to disagree with the analytic machinery whenever the
analytic machinery is wrong.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .caustic import TiltField
from .errors import DegenerateSamplingError, ValidationError
from .inclination import AngleInterval, InclinationCurve, PlanePoint, reconstruct

__all__ = [
    "PARALLEL_THRESHOLD",
    "CUSP_EXCLUSION_RADIUS",
    "Ray",
    "RayFamily",
    "rays_from_tilt",
    "reflect_horizontal",
    "EnvelopePolyline",
    "envelope_numeric",
    "hausdorff_distance",
    "Verticality",
    "verticality_check",
    "Occlusion",
    "occlusion_check",
]

PARALLEL_THRESHOLD = 1e-12
"""Consecutive rays whose direction cross product is below this are parallel."""

CUSP_EXCLUSION_RADIUS = 1e-2
"""Disk radius carved out around cusps before envelope comparisons.

Near a cusp the envelope point is the intersection of nearly coincident
rays; the intersection error scales like (ray direction error)/(angle
between the rays), so no fixed ray budget survives arbitrarily close to
the cusp.  Excluding a fixed small disk keeps the comparison conditioned.
"""


@dataclass(frozen=True)
class Ray:
    """A light ray: a base point and a unit direction."""

    base: PlanePoint
    direction: np.ndarray

    def __post_init__(self):
        d = np.asarray(self.direction, dtype=float)
        if d.shape != (2,):
            raise ValidationError("ray direction must be a 2-vector")
        if abs(float(np.hypot(d[0], d[1])) - 1.0) > 1e-12:
            raise ValidationError("ray direction must be a unit vector (to 1e-12)")
        object.__setattr__(self, "direction", d)

    def point_at(self, t: float) -> np.ndarray:
        return np.asarray(self.base) + t * self.direction


@dataclass(frozen=True)
class RayFamily:
    """An ordered one-parameter family of rays."""

    rays: tuple[Ray, ...]
    source_thetas: tuple[float, ...]

    def __post_init__(self):
        if len(self.rays) != len(self.source_thetas):
            raise ValidationError("one source angle per ray")
        t = np.asarray(self.source_thetas, dtype=float)
        if len(t) > 1 and not np.all(np.diff(t) > 0):
            raise ValidationError("source angles must increase strictly")

    def __len__(self) -> int:
        return len(self.rays)

    def bases(self) -> np.ndarray:
        return np.array([ray.base for ray in self.rays], dtype=float)

    def directions(self) -> np.ndarray:
        return np.array([ray.direction for ray in self.rays], dtype=float)


def rays_from_tilt(
    curve: InclinationCurve,
    tilt: TiltField,
    interval: AngleInterval | None = None,
    anchor: PlanePoint | tuple[float, float] = (0.0, 0.0),
) -> RayFamily:
    """Rays leaving the curve along the tilted direction field.

    Each reconstructed sample emits one ray from its position along
    nu = sin(phi) T + cos(phi) N.
    """
    samples = reconstruct(curve, interval, anchor=anchor)
    rays = []
    thetas = []
    for s in samples:
        phi = float(tilt.phi(s.theta))
        nu = math.sin(phi) * s.tangent + math.cos(phi) * s.normal
        rays.append(Ray(base=s.position, direction=nu / np.hypot(nu[0], nu[1])))
        thetas.append(s.theta)
    return RayFamily(rays=tuple(rays), source_thetas=tuple(thetas))


def reflect_horizontal(
    points: np.ndarray, source_thetas: Sequence[float] | None = None
) -> RayFamily:
    """Reflect rightward-travelling horizontal light off a polyline mirror.

    The vertex normal comes from the adjacent segment directions; the
    incoming direction (1, 0) is reflected about it.  Without explicit
    parameter values the rays are numbered 0, 1, 2, ...
    """
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2 or len(pts) < 2:
        raise ValidationError("mirror polyline must be an (n, 2) array with n >= 2")
    seg = np.diff(pts, axis=0)
    norms = np.linalg.norm(seg, axis=1)
    if np.any(norms == 0.0):
        raise DegenerateSamplingError(
            f"repeated polyline point at index {int(np.argmin(norms))}"
        )
    unit = seg / norms[:, None]
    tangents = np.empty_like(pts)
    tangents[0] = unit[0]
    tangents[-1] = unit[-1]
    if len(pts) > 2:
        mids = unit[:-1] + unit[1:]
        bad = np.linalg.norm(mids, axis=1) < 1e-12
        if np.any(bad):
            raise DegenerateSamplingError(
                f"polyline reverses direction at vertex {int(np.flatnonzero(bad)[0]) + 1}"
            )
        tangents[1:-1] = mids / np.linalg.norm(mids, axis=1)[:, None]
    normals = np.stack([-tangents[:, 1], tangents[:, 0]], axis=1)
    incoming = np.array([1.0, 0.0])
    dot = normals @ incoming
    directions = incoming[None, :] - 2.0 * dot[:, None] * normals
    directions /= np.linalg.norm(directions, axis=1)[:, None]
    if source_thetas is None:
        source_thetas = np.arange(len(pts), dtype=float)
    rays = tuple(
        Ray(base=PlanePoint(*p), direction=d) for p, d in zip(pts, directions)
    )
    return RayFamily(rays=rays, source_thetas=tuple(float(t) for t in source_thetas))


@dataclass(frozen=True)
class EnvelopePolyline:
    """Envelope estimate from consecutive-ray intersections.

    ``points[i]`` is the intersection of rays i and i+1, or NaN where the
    pair was parallel; ``gap_indices`` lists those pairs.  ``parameters``
    carries the midpoint source angles.
    """

    points: np.ndarray
    parameters: np.ndarray
    gap_indices: tuple[int, ...]


def envelope_numeric(family: RayFamily) -> EnvelopePolyline:
    """Estimate the envelope of a ray family by intersecting neighbours.

    First-order accurate in the angular step.  Parallel consecutive rays
    (cross product below ``PARALLEL_THRESHOLD``) produce a flagged NaN gap
    instead of a point; a family of all-parallel rays therefore yields an
    empty (all-NaN) envelope, the caustic at infinity.
    """
    if len(family) < 3:
        raise ValidationError("need at least 3 rays to estimate an envelope")
    b = family.bases()
    d = family.directions()
    b0, b1 = b[:-1], b[1:]
    d0, d1 = d[:-1], d[1:]
    cross = d0[:, 0] * d1[:, 1] - d0[:, 1] * d1[:, 0]
    delta = b1 - b0
    with np.errstate(divide="ignore", invalid="ignore"):
        t = (delta[:, 0] * d1[:, 1] - delta[:, 1] * d1[:, 0]) / cross
        pts = b0 + t[:, None] * d0
    parallel = np.abs(cross) < PARALLEL_THRESHOLD
    pts[parallel] = np.nan
    mids = 0.5 * (np.asarray(family.source_thetas[:-1]) + np.asarray(family.source_thetas[1:]))
    return EnvelopePolyline(
        points=pts,
        parameters=mids,
        gap_indices=tuple(int(i) for i in np.flatnonzero(parallel)),
    )


def _split_segments(points: np.ndarray) -> np.ndarray:
    """Segments between consecutive finite points (NaN rows break the chain)."""
    finite = np.all(np.isfinite(points), axis=1)
    keep = finite[:-1] & finite[1:]
    return np.stack([points[:-1][keep], points[1:][keep]], axis=1)


def _mask_near(points: np.ndarray, centers: np.ndarray, radius: float) -> np.ndarray:
    """True for points farther than ``radius`` from every center."""
    if centers.size == 0:
        return np.all(np.isfinite(points), axis=1)
    d = np.linalg.norm(points[:, None, :] - centers[None, :, :], axis=2)
    far = np.all(d > radius, axis=1)
    return far & np.all(np.isfinite(points), axis=1)


def _directed_distance(points: np.ndarray, segments: np.ndarray) -> float:
    if len(points) == 0:
        return 0.0
    if len(segments) == 0:
        return math.inf
    a = segments[:, 0]
    v = segments[:, 1] - segments[:, 0]
    vv = np.einsum("ij,ij->i", v, v)
    vv[vv == 0.0] = 1.0
    best = np.full(len(points), math.inf)
    chunk = max(1, 2_000_000 // max(1, len(segments)))
    for lo in range(0, len(points), chunk):
        p = points[lo : lo + chunk]
        w = p[:, None, :] - a[None, :, :]
        t = np.clip(np.einsum("pij,ij->pi", w, v) / vv[None, :], 0.0, 1.0)
        closest = a[None, :, :] + t[:, :, None] * v[None, :, :]
        dist = np.linalg.norm(p[:, None, :] - closest, axis=2)
        best[lo : lo + chunk] = dist.min(axis=1)
    return float(best.max())


def hausdorff_distance(
    first: np.ndarray,
    second: np.ndarray,
    exclusions: np.ndarray | Sequence = (),
    exclusion_radius: float = CUSP_EXCLUSION_RADIUS,
) -> float:
    """Symmetric Hausdorff distance between two polylines.

    NaN rows split a polyline into disconnected runs.  Points within
    ``exclusion_radius`` of any exclusion center (typically cusps, where
    consecutive-ray intersection is ill conditioned) are left out of the
    comparison, as are the segments touching them.
    """
    first = np.asarray(first, dtype=float)
    second = np.asarray(second, dtype=float)
    centers = np.asarray(exclusions, dtype=float).reshape(-1, 2)

    def prepare(points: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        keep = _mask_near(points, centers, exclusion_radius)
        masked = np.where(keep[:, None], points, np.nan)
        return points[keep], _split_segments(masked)

    pts1, segs1 = prepare(first)
    pts2, segs2 = prepare(second)
    if len(pts1) == 0 or len(pts2) == 0:
        raise ValidationError("a polyline was entirely excluded; nothing to compare")
    return max(_directed_distance(pts1, segs2), _directed_distance(pts2, segs1))


class Verticality(NamedTuple):
    """Whether a polyline is the graph of x = f(y), plus the first breakage."""

    is_vertical: bool
    first_violation: int | None


def verticality_check(points: np.ndarray) -> Verticality:
    """A mirror is vertical iff y is strictly monotone along it."""
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2 or len(pts) < 2:
        raise ValidationError("polyline must be an (n, 2) array with n >= 2")
    dy = np.diff(pts[:, 1])
    direction = 0.0
    for i, step in enumerate(dy):
        if step == 0.0:
            return Verticality(False, i)
        if direction == 0.0:
            direction = math.copysign(1.0, step)
        elif math.copysign(1.0, step) != direction:
            return Verticality(False, i)
    return Verticality(True, None)


class Occlusion(NamedTuple):
    """Self-shadowing of a mirror under rightward horizontal light."""

    has_occlusion: bool
    blocked_fraction: float
    blocked_indices: tuple[int, ...]


def occlusion_check(points: np.ndarray) -> Occlusion:
    """Cast the incoming horizontal ray to every vertex and look for blockers.

    A vertex is blocked when some non-adjacent segment of the polyline
    intersects the open ray from x = -inf to the vertex strictly before
    reaching it.
    """
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2 or len(pts) < 2:
        raise ValidationError("polyline must be an (n, 2) array with n >= 2")
    n = len(pts)
    x, y = pts[:, 0], pts[:, 1]
    x0, y0 = x[:-1], y[:-1]
    x1, y1 = x[1:], y[1:]
    dy = y1 - y0
    safe_dy = np.where(dy == 0.0, 1.0, dy)
    blocked = []
    chunk = max(1, 2_000_000 // max(1, n))
    seg_idx = np.arange(n - 1)
    for lo in range(0, n, chunk):
        yv = y[lo : lo + chunk, None]
        xv = x[lo : lo + chunk, None]
        crosses = (y0[None, :] <= yv) != (y1[None, :] <= yv)
        with np.errstate(invalid="ignore"):
            xhit = x0[None, :] + (yv - y0[None, :]) / safe_dy[None, :] * (x1 - x0)[None, :]
        ahead = xhit < xv - 1e-9
        vidx = np.arange(lo, min(lo + chunk, n))[:, None]
        adjacent = (seg_idx[None, :] == vidx) | (seg_idx[None, :] == vidx - 1)
        hit = crosses & ahead & ~adjacent
        for row, v in zip(hit, range(lo, min(lo + chunk, n))):
            if row.any():
                blocked.append(v)
    fraction = len(blocked) / n
    return Occlusion(
        has_occlusion=bool(blocked),
        blocked_fraction=fraction,
        blocked_indices=tuple(blocked),
    )
