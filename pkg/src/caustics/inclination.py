"""Plane curves described by their inclination: a turning radius R(theta).

A curve here is a signed radius of curvature given as a function of the
tangent angle theta.  The tangent is always ``(cos theta, sin theta)``; the
point is recovered by integrating ``R * (cos theta, sin theta)``.  R may
change sign (the curve passes through a cusp) and the arclength, defined by
``ds = R dtheta``, may decrease.

The module provides the curve type, reconstruction to vertex samples by
adaptive Gauss-Legendre quadrature, cusp location, and a discrete check of
the frame equations.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple, Sequence

import numpy as np

from .errors import (
    DegenerateSamplingError,
    DomainError,
    EvaluationError,
    ValidationError,
)
from .quadrature import panel_integrals

__all__ = [
    "PlanePoint",
    "AngleInterval",
    "InclinationCurve",
    "FrameSample",
    "reconstruct",
    "find_cusps",
    "classify_zeros",
    "frenet_residual",
    "circle",
    "cycloid",
    "log_spiral",
    "polynomial_curve",
]

POLE_GUARD = 1e-6


class PlanePoint(NamedTuple):
    """A point of the plane."""

    x: float
    y: float


@dataclass(frozen=True)
class AngleInterval:
    """A tangent-angle window ``[lo, hi]`` with a default sampling density."""

    lo: float
    hi: float
    n_samples: int = 257

    def __post_init__(self):
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            raise ValidationError("interval endpoints must be finite")
        if not self.lo < self.hi:
            raise ValidationError(
                f"need lo < hi, got [{self.lo}, {self.hi}]; the tangent angle "
                "increases strictly along every curve"
            )
        if self.n_samples < 2:
            raise ValidationError("an interval carries at least 2 samples")

    @property
    def length(self) -> float:
        return self.hi - self.lo

    def grid(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.n_samples)

    def contains(self, theta, slack: float = 1e-12) -> bool:
        theta = np.asarray(theta, dtype=float)
        return bool(np.all(theta >= self.lo - slack) and np.all(theta <= self.hi + slack))


@dataclass(frozen=True)
class InclinationCurve:
    """A plane curve given by its signed turning radius.

    Parameters
    ----------
    radius_fn : callable
        Vectorised map ``theta -> R``.  Positive R turns the tangent
        counterclockwise ahead of the point, negative R behind it.
    domain : AngleInterval
        Angles on which the radius may be evaluated.
    radius_derivative_fn : callable, optional
        Analytic derivative ``dR/dtheta``.  When absent, a five-point
        central difference with step ``fd_step * max(1, |theta|)`` is used.
    label : str
        Display name used by reports and the command line.
    poles : tuple of float
        Angles where R blows up; reconstruction refuses to cross them and
        clips intervals that lean on them by ``POLE_GUARD``.
    """

    radius_fn: Callable[[np.ndarray], np.ndarray]
    domain: AngleInterval
    radius_derivative_fn: Callable[[np.ndarray], np.ndarray] | None = None
    label: str = ""
    poles: tuple[float, ...] = ()
    fd_step: float = 1e-5

    def radius(self, theta):
        theta = np.asarray(theta, dtype=float)
        out = np.asarray(self.radius_fn(theta), dtype=float)
        return out if out.shape else float(out)

    def radius_prime(self, theta):
        theta = np.asarray(theta, dtype=float)
        if self.radius_derivative_fn is not None:
            out = np.asarray(self.radius_derivative_fn(theta), dtype=float)
            return out if out.shape else float(out)
        h = self.fd_step * np.maximum(1.0, np.abs(theta))
        r = self.radius_fn
        out = (r(theta - 2 * h) - 8 * r(theta - h) + 8 * r(theta + h) - r(theta + 2 * h)) / (
            12 * h
        )
        out = np.asarray(out, dtype=float)
        return out if out.shape else float(out)


@dataclass(frozen=True)
class FrameSample:
    """One reconstructed vertex: position, frame, radius and arclength."""

    theta: float
    position: PlanePoint
    tangent: np.ndarray
    normal: np.ndarray
    radius: float
    arclength: float


def _clip_interval(curve: InclinationCurve, lo: float, hi: float) -> tuple[float, float]:
    """Apply the pole guard band; reject poles strictly inside."""
    for p in curve.poles:
        if lo + POLE_GUARD < p < hi - POLE_GUARD:
            raise DomainError(
                f"R has a pole at theta = {p} inside [{lo}, {hi}]; split the interval"
            )
        if p <= lo + POLE_GUARD and p >= lo - POLE_GUARD:
            lo = p + POLE_GUARD
        if p >= hi - POLE_GUARD and p <= hi + POLE_GUARD:
            hi = p - POLE_GUARD
    if not lo < hi:
        raise DomainError(f"interval [{lo}, {hi}] collapsed after pole clipping")
    return lo, hi


def _resolve_grid(curve: InclinationCurve, interval) -> np.ndarray:
    if interval is None:
        interval = curve.domain
    if isinstance(interval, AngleInterval):
        lo, hi = _clip_interval(curve, interval.lo, interval.hi)
        thetas = np.linspace(lo, hi, interval.n_samples)
    else:
        thetas = np.asarray(interval, dtype=float)
        if thetas.ndim != 1 or thetas.size < 2:
            raise ValidationError("need an AngleInterval or >= 2 increasing angles")
        if np.any(np.diff(thetas) <= 0):
            raise ValidationError("sample angles must increase strictly")
        lo, hi = _clip_interval(curve, float(thetas[0]), float(thetas[-1]))
        if lo > thetas[0] or hi < thetas[-1]:
            thetas = thetas[(thetas >= lo) & (thetas <= hi)]
            if thetas.size < 2:
                raise DomainError("fewer than 2 samples remain after pole clipping")
    if not curve.domain.contains(thetas[[0, -1]], slack=1e-9):
        raise DomainError(
            f"[{thetas[0]}, {thetas[-1]}] leaves the curve domain "
            f"[{curve.domain.lo}, {curve.domain.hi}]"
        )
    return thetas


def reconstruct(
    curve: InclinationCurve,
    interval: AngleInterval | Sequence[float] | None = None,
    anchor: PlanePoint | tuple[float, float] = (0.0, 0.0),
    frame_rotation: float = 0.0,
    tol: float = 1e-10,
) -> list[FrameSample]:
    """Integrate the inclination data into vertex samples.

    The position increment over each grid cell is
    ``integral of R * (cos, sin)`` and the arclength increment is
    ``integral of R``, both by adaptive composite Gauss-Legendre rules of
    order 8 to absolute tolerance ``tol``.  The first sample sits at
    ``anchor``.  A nonzero ``frame_rotation`` rotates the whole picture
    (offsets and frames) about the anchor.

    Parameters
    ----------
    curve : InclinationCurve
    interval : AngleInterval or increasing angle array, optional
        Defaults to the curve's domain.
    anchor : pair of floats
        Position of the first sample.
    frame_rotation : float
        Rigid rotation applied to the reconstruction, in radians.
    tol : float
        Absolute quadrature tolerance.

    Returns
    -------
    list of FrameSample
    """
    thetas = _resolve_grid(curve, interval)

    def integrand(t):
        r = np.asarray(curve.radius_fn(t), dtype=float)
        return np.stack([r * np.cos(t), r * np.sin(t), r])

    pieces = panel_integrals(integrand, thetas, tol=tol)
    dx, dy, ds = pieces

    node_r = np.asarray(curve.radius_fn(thetas), dtype=float)
    if not np.all(np.isfinite(node_r)):
        bad = thetas[~np.isfinite(node_r)][0]
        raise EvaluationError(f"R is not finite at theta = {bad}")

    x = np.concatenate([[0.0], np.cumsum(dx)])
    y = np.concatenate([[0.0], np.cumsum(dy)])
    s = np.concatenate([[0.0], np.cumsum(ds)])

    rot = frame_rotation
    cr, sr = math.cos(rot), math.sin(rot)
    ax, ay = float(anchor[0]), float(anchor[1])
    px = ax + cr * x - sr * y
    py = ay + sr * x + cr * y

    tx, ty = np.cos(thetas + rot), np.sin(thetas + rot)
    samples = []
    for i, th in enumerate(thetas):
        samples.append(
            FrameSample(
                theta=float(th),
                position=PlanePoint(float(px[i]), float(py[i])),
                tangent=np.array([tx[i], ty[i]]),
                normal=np.array([-ty[i], tx[i]]),
                radius=float(node_r[i]),
                arclength=float(s[i]),
            )
        )
    return samples


def _bisect_zero(fn, lo: float, hi: float, tol: float) -> float:
    flo = fn(lo)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if hi - lo <= tol:
            return mid
        fmid = fn(mid)
        if fmid == 0.0:
            return mid
        if (flo < 0) != (fmid < 0):
            hi = mid
        else:
            lo, flo = mid, fmid
    return 0.5 * (lo + hi)


def classify_zeros(
    curve: InclinationCurve,
    interval: AngleInterval | None = None,
    refine_tol: float = 1e-12,
) -> dict[str, list[float]]:
    """Zeros of R strictly inside the interval, split by kind.

    Returns a dict with keys ``"cusps"`` (sign changes, refined by
    bisection to ``refine_tol``) and ``"flat_points"`` (grid nodes where R
    touches zero without changing sign).
    """
    if interval is None:
        interval = curve.domain
    thetas = _resolve_grid(curve, interval)
    r = np.asarray(curve.radius_fn(thetas), dtype=float)
    if not np.all(np.isfinite(r)):
        bad = thetas[~np.isfinite(r)][0]
        raise EvaluationError(f"R is not finite at theta = {bad}")

    scalar = lambda t: float(curve.radius_fn(np.asarray([t]))[0])
    cusps: list[float] = []
    flats: list[float] = []
    sign = np.sign(r)
    for i in range(len(thetas) - 1):
        a, b = sign[i], sign[i + 1]
        if a != 0 and b != 0 and a != b:
            cusps.append(_bisect_zero(scalar, thetas[i], thetas[i + 1], refine_tol))
    for i in range(1, len(thetas) - 1):
        if sign[i] == 0:
            if sign[i - 1] != 0 and sign[i - 1] == sign[i + 1]:
                flats.append(float(thetas[i]))
            elif sign[i - 1] != 0 and sign[i + 1] != 0:
                cusps.append(float(thetas[i]))
    return {"cusps": sorted(cusps), "flat_points": flats}


def find_cusps(
    curve: InclinationCurve,
    interval: AngleInterval | None = None,
    refine_tol: float = 1e-12,
) -> list[float]:
    """Angles strictly inside the interval where R changes sign."""
    return classify_zeros(curve, interval, refine_tol)["cusps"]


def frenet_residual(samples: Sequence[FrameSample]) -> float:
    """Largest deviation of the sampled frame from its defining equations.

    Uses centred differences of the tangent against arclength and compares
    with ``normal / R`` at the interior samples.  Needs at least three
    samples with pairwise distinct arclengths.
    """
    if len(samples) < 3:
        raise DegenerateSamplingError("frenet_residual needs at least 3 samples")
    t = np.array([s.tangent for s in samples])
    n = np.array([s.normal for s in samples])
    s_arc = np.array([s.arclength for s in samples])
    r = np.array([s.radius for s in samples])
    ds = s_arc[2:] - s_arc[:-2]
    if np.any(ds == 0.0):
        raise DegenerateSamplingError("coincident arclengths; sampling is degenerate")
    if np.any(r[1:-1] == 0.0):
        raise DegenerateSamplingError("R vanishes at an interior sample (cusp)")
    dt_ds = (t[2:] - t[:-2]) / ds[:, None]
    target = n[1:-1] / r[1:-1, None]
    return float(np.max(np.linalg.norm(dt_ds - target, axis=1)))


# ---------------------------------------------------------------------------
# stock curves

_DEFAULT_DOMAIN = AngleInterval(-4 * math.pi, 4 * math.pi, 1025)


def circle(radius: float = 1.0, domain: AngleInterval | None = None) -> InclinationCurve:
    """Constant turning radius."""
    if radius == 0.0:
        raise ValidationError("circle needs a nonzero radius")
    dom = domain or _DEFAULT_DOMAIN
    return InclinationCurve(
        radius_fn=lambda t: np.full_like(np.asarray(t, dtype=float), radius),
        radius_derivative_fn=lambda t: np.zeros_like(np.asarray(t, dtype=float)),
        domain=dom,
        label=f"circle(R={radius:g})",
    )


def cycloid(amplitude: float = 1.0, domain: AngleInterval | None = None) -> InclinationCurve:
    """R = A sin(theta): the rolling-point curve, cusps at multiples of pi."""
    if amplitude == 0.0:
        raise ValidationError("cycloid needs a nonzero amplitude")
    dom = domain or _DEFAULT_DOMAIN
    return InclinationCurve(
        radius_fn=lambda t: amplitude * np.sin(t),
        radius_derivative_fn=lambda t: amplitude * np.cos(t),
        domain=dom,
        label=f"cycloid(A={amplitude:g})",
    )


def log_spiral(
    amplitude: float = 1.0,
    growth: float = 1.0,
    domain: AngleInterval | None = None,
) -> InclinationCurve:
    """R = A * exp(b * theta): the equiangular spiral."""
    if amplitude == 0.0:
        raise ValidationError("log_spiral needs a nonzero amplitude")
    dom = domain or _DEFAULT_DOMAIN
    return InclinationCurve(
        radius_fn=lambda t: amplitude * np.exp(growth * np.asarray(t, dtype=float)),
        radius_derivative_fn=lambda t: amplitude
        * growth
        * np.exp(growth * np.asarray(t, dtype=float)),
        domain=dom,
        label=f"log_spiral(A={amplitude:g}, b={growth:g})",
    )


def polynomial_curve(
    coefficients: Sequence[float],
    domain: AngleInterval | None = None,
) -> InclinationCurve:
    """R given by a polynomial in theta (ascending coefficients)."""
    coeffs = np.asarray(list(coefficients), dtype=float)
    if coeffs.size == 0 or not np.any(coeffs):
        raise ValidationError("polynomial_curve needs at least one nonzero coefficient")
    poly = np.polynomial.Polynomial(coeffs)
    dpoly = poly.deriv()
    dom = domain or _DEFAULT_DOMAIN
    return InclinationCurve(
        radius_fn=lambda t: poly(np.asarray(t, dtype=float)),
        radius_derivative_fn=lambda t: dpoly(np.asarray(t, dtype=float)),
        domain=dom,
        label="series(" + ",".join(f"{c:g}" for c in coeffs) + ")",
    )
