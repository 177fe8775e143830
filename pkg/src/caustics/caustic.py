"""Caustics of inclination curves under a tilted conormal field.

A tilt field phi(theta) rotates the curve's frame into a coframe
``tau = cos(phi) T - sin(phi) N`` and ``nu = sin(phi) T + cos(phi) N``.
Rays leave the curve along ``nu``; their envelope is the caustic.  The
caustic point at parameter theta sits at ``r + (cos phi / chi) nu`` with
focusing density ``chi = (1 - phi') / R``, its tangent angle is
``theta + pi/2 - phi``, and its own turning radius follows from the
curve's R, R' and the tilt derivatives.

Three stock tilts cover the classical constructions: ``evolute`` (phi = 0,
normal rays), ``skew`` (constant phi), and ``reflection``
(phi = pi/2 - theta, horizontal light reflected by the curve).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from collections.abc import Sequence
from typing import Callable

import numpy as np

from .errors import (
    CausticAtInfinityError,
    CuspError,
    DomainError,
    FlatCausticError,
    ValidationError,
)
from .inclination import (
    AngleInterval,
    FrameSample,
    InclinationCurve,
    PlanePoint,
    reconstruct,
)

__all__ = [
    "TiltField",
    "CoframeState",
    "CausticSample",
    "SimilaritySpec",
    "coframe_at",
    "caustic_radius",
    "caustic_point",
    "caustic_curve",
    "similarity_residual",
]

FLAT_TILT_GUARD = 1e-8


@dataclass(frozen=True)
class TiltField:
    """A tilt angle phi(theta) with its first two derivatives."""

    phi_fn: Callable[[np.ndarray], np.ndarray]
    phi_prime_fn: Callable[[np.ndarray], np.ndarray]
    phi_second_fn: Callable[[np.ndarray], np.ndarray]
    kind: str = "custom"
    skew_angle: float | None = None

    @staticmethod
    def evolute() -> "TiltField":
        """Rays along the normal: phi identically 0."""
        zero = lambda t: np.zeros_like(np.asarray(t, dtype=float))
        return TiltField(zero, zero, zero, kind="evolute", skew_angle=0.0)

    @staticmethod
    def skew(phi0: float) -> "TiltField":
        """Rays at a constant angle phi0 to the normal."""
        zero = lambda t: np.zeros_like(np.asarray(t, dtype=float))
        const = lambda t: np.full_like(np.asarray(t, dtype=float), phi0)
        return TiltField(const, zero, zero, kind="skew", skew_angle=float(phi0))

    @staticmethod
    def reflection() -> "TiltField":
        """Horizontal rays reflected by the curve: phi = pi/2 - theta."""
        phi = lambda t: math.pi / 2 - np.asarray(t, dtype=float)
        minus_one = lambda t: np.full_like(np.asarray(t, dtype=float), -1.0)
        zero = lambda t: np.zeros_like(np.asarray(t, dtype=float))
        return TiltField(phi, minus_one, zero, kind="reflection")

    def phi(self, theta):
        return np.asarray(self.phi_fn(np.asarray(theta, dtype=float)), dtype=float)

    def phi_prime(self, theta):
        return np.asarray(self.phi_prime_fn(np.asarray(theta, dtype=float)), dtype=float)

    def phi_second(self, theta):
        return np.asarray(self.phi_second_fn(np.asarray(theta, dtype=float)), dtype=float)


@dataclass(frozen=True)
class CoframeState:
    """Tilted frame and focusing density at one angle."""

    theta: float
    tau: np.ndarray
    nu: np.ndarray
    chi: float


@dataclass(frozen=True)
class CausticSample:
    """One caustic vertex, or a flagged failure for its source angle."""

    source_theta: float
    caustic_theta: float
    caustic_radius: float
    position: PlanePoint
    ray_length: float
    error: str | None = None


@dataclass(frozen=True)
class SimilaritySpec:
    """Parameters of a self-similarity law ``caustic = a * source(shifted)``.

    ``sign=+1`` compares against ``R(theta + pi/2 - phi - beta)``; ``sign=-1``
    against the angle-reversed argument.
    """

    factor_a: float
    shift_beta: float
    sign: int = 1

    def __post_init__(self):
        if self.sign not in (-1, 1):
            raise ValidationError("similarity sign must be +1 or -1")

    @property
    def alpha(self) -> float:
        """The delay seen by constant-tilt families: beta - pi/2."""
        return self.shift_beta - math.pi / 2


def coframe_at(curve: InclinationCurve, tilt: TiltField, theta: float) -> CoframeState:
    """Tilted coframe and focusing density chi at a single angle."""
    r = float(curve.radius(theta))
    if r == 0.0:
        raise CuspError(f"R vanishes at theta = {theta}; no curvature frame there")
    p1 = float(tilt.phi_prime(theta))
    if abs(1.0 - p1) < FLAT_TILT_GUARD:
        raise FlatCausticError(
            f"tilt derivative is {p1} at theta = {theta}; the caustic flattens"
        )
    phi = float(tilt.phi(theta))
    ct, st = math.cos(theta), math.sin(theta)
    tangent = np.array([ct, st])
    normal = np.array([-st, ct])
    tau = math.cos(phi) * tangent - math.sin(phi) * normal
    nu = math.sin(phi) * tangent + math.cos(phi) * normal
    return CoframeState(theta=float(theta), tau=tau, nu=nu, chi=(1.0 - p1) / r)


def caustic_radius(r, r_prime, phi, phi_prime, phi_second):
    """Turning radius of the caustic from local curve and tilt data.

    All arguments broadcast.  Requires the tilt derivative to stay away
    from 1 (otherwise the caustic flattens and the radius diverges).
    """
    r = np.asarray(r, dtype=float)
    r_prime = np.asarray(r_prime, dtype=float)
    phi = np.asarray(phi, dtype=float)
    p1 = np.asarray(phi_prime, dtype=float)
    p2 = np.asarray(phi_second, dtype=float)
    if np.any(np.abs(1.0 - p1) < FLAT_TILT_GUARD):
        raise FlatCausticError("tilt derivative too close to 1; caustic flattens")
    one = 1.0 - p1
    out = ((1.0 - 2.0 * p1) * np.sin(phi) + (p2 / one) * np.cos(phi)) * r
    out = (out + np.cos(phi) * r_prime) / (one * one)
    return out if out.shape else float(out)


def caustic_point(
    sample: FrameSample,
    tilt: TiltField,
    radius_prime: float,
) -> CausticSample:
    """Caustic vertex generated by one curve sample.

    ``radius_prime`` is dR/dtheta at the sample angle; the curve sample
    itself does not carry it.
    """
    theta = sample.theta
    r = sample.radius
    if r == 0.0:
        raise CuspError(f"R vanishes at theta = {theta}; caustic point undefined")
    phi = float(tilt.phi(theta))
    p1 = float(tilt.phi_prime(theta))
    p2 = float(tilt.phi_second(theta))
    if abs(1.0 - p1) < FLAT_TILT_GUARD:
        raise FlatCausticError(
            f"tilt derivative is {p1} at theta = {theta}; the caustic flattens"
        )
    chi = (1.0 - p1) / r
    if chi == 0.0:
        raise CausticAtInfinityError(f"focusing density vanishes at theta = {theta}")
    ct, st = math.cos(theta), math.sin(theta)
    # nu = sin(phi) T + cos(phi) N with T = (ct, st), N = (-st, ct)
    nu = np.array([math.sin(phi) * ct - math.cos(phi) * st,
                   math.sin(phi) * st + math.cos(phi) * ct])
    stretch = math.cos(phi) / chi
    pos = PlanePoint(sample.position.x + stretch * nu[0], sample.position.y + stretch * nu[1])
    r1 = caustic_radius(r, radius_prime, phi, p1, p2)
    return CausticSample(
        source_theta=theta,
        caustic_theta=theta + math.pi / 2 - phi,
        caustic_radius=float(r1),
        position=pos,
        ray_length=abs(stretch),
    )


def caustic_curve(
    curve: InclinationCurve,
    tilt: TiltField,
    interval: AngleInterval | Sequence[float] | None = None,
    anchor: PlanePoint | tuple[float, float] = (0.0, 0.0),
    tol: float = 1e-10,
) -> list[CausticSample]:
    """Caustic vertices over a whole interval.

    Nodes whose coframe degenerates (cusp, flat tilt, infinite caustic)
    are not dropped: they come back with NaN fields and the failure text
    in ``error``.
    """
    samples = reconstruct(curve, interval, anchor=anchor, tol=tol)
    thetas = np.array([s.theta for s in samples])
    rprime = np.asarray(curve.radius_prime(thetas), dtype=float)
    out: list[CausticSample] = []
    nan_point = PlanePoint(math.nan, math.nan)
    for s, rp in zip(samples, rprime):
        try:
            out.append(caustic_point(s, tilt, float(rp)))
        except (ArithmeticError, ValueError) as exc:
            out.append(
                CausticSample(
                    source_theta=s.theta,
                    caustic_theta=math.nan,
                    caustic_radius=math.nan,
                    position=nan_point,
                    ray_length=math.nan,
                    error=f"{type(exc).__name__}: {exc}",
                )
            )
    return out


def similarity_residual(
    curve: InclinationCurve,
    tilt: TiltField,
    spec: SimilaritySpec,
    interval: AngleInterval | None = None,
) -> float:
    """Sup-norm defect of the self-similarity law on a grid.

    Compares the caustic radius at theta with
    ``a * R(sign * (theta + pi/2 - phi - beta))`` and returns the largest
    absolute difference.  Raises ``DomainError`` if a shifted argument
    leaves the curve's domain.
    """
    if interval is None:
        interval = curve.domain
    thetas = interval.grid()
    r = np.asarray(curve.radius(thetas), dtype=float)
    rp = np.asarray(curve.radius_prime(thetas), dtype=float)
    phi = tilt.phi(thetas)
    lhs = caustic_radius(r, rp, phi, tilt.phi_prime(thetas), tilt.phi_second(thetas))
    arg = spec.sign * (thetas + math.pi / 2 - phi - spec.shift_beta)
    if not curve.domain.contains(arg):
        bad = arg[(arg < curve.domain.lo) | (arg > curve.domain.hi)][0]
        raise DomainError(
            f"similarity argument {bad} leaves the curve domain; widen it "
            "or shrink the interval"
        )
    rhs = spec.factor_a * np.asarray(curve.radius(arg), dtype=float)
    return float(np.max(np.abs(lhs - rhs)))
