"""Curves whose constant-tilt caustic is a similar copy of themselves.

With a constant tilt phi0 the self-similarity law collapses to a scalar
functional equation for the turning radius,

    cos(phi0) R'(theta) + sin(phi0) R(theta) = a R(argument),

and the three possible arguments give three solution families:

* ``point_by_point`` (argument theta): exponentials, i.e. equiangular
  spirals, degenerating to the circle exactly at a = sin(phi0);
* ``inverse_position`` (argument alpha - theta): solutions of a constant
  coefficient second order equation - trigonometric, linear (circle
  involutes) or hyperbolic depending on the sign of a^2 - sin(phi0)^2;
* ``delay`` (argument theta - alpha): exponential sums whose rates are
  Lambert W values, one per branch.

The module also carries the cuspidal spirals R = exp(c theta) sin(gamma
theta) and their geometric-progression diagnostics.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import (
    BranchUnavailableError,
    DegenerateCurveError,
    DomainError,
    NumericError,
    ValidationError,
)
from .inclination import (
    AngleInterval,
    InclinationCurve,
    PlanePoint,
    find_cusps,
    log_spiral,
    reconstruct,
)
from .specfun import lambert_w, real_branch_indices

__all__ = [
    "SkewFamilySpec",
    "CharacteristicRoot",
    "point_by_point_curve",
    "inverse_position_curve",
    "implied_alpha",
    "to_delay_form",
    "delay_roots",
    "delay_curve",
    "build_family",
    "skew_equation_residual",
    "puiseux_curve",
    "PuiseuxReport",
    "puiseux_diagnostics",
]

_CASES = ("point_by_point", "inverse_position", "delay")

_WIDE = AngleInterval(-4 * math.pi, 4 * math.pi, 1025)


def _check_phi0(phi0: float) -> float:
    phi0 = float(phi0)
    if not abs(phi0) < math.pi / 2:
        raise ValidationError(f"tilt phi0 must satisfy |phi0| < pi/2, got {phi0}")
    return phi0


@dataclass(frozen=True)
class SkewFamilySpec:
    """A constant-tilt similarity problem.

    ``coefficients`` holds one ``(A, B)`` pair per root (delay case) or a
    single pair (the other cases; B is the second amplitude where one is
    meaningful).  Advance problems (``alpha < 0``) are normalised on
    construction by reversing the angle, which flips the signs of alpha,
    phi0 and the factor.
    """

    case: str
    phi0: float
    factor_a: float
    alpha: float = 0.0
    root_indices: tuple[int, ...] = (0,)
    coefficients: tuple[tuple[float, float], ...] = ((1.0, 0.0),)

    def __post_init__(self):
        if self.case not in _CASES:
            raise ValidationError(f"case must be one of {_CASES}, got {self.case!r}")
        _check_phi0(self.phi0)
        if self.case == "delay":
            if self.alpha == 0.0:
                raise ValidationError(
                    "delay case needs alpha != 0; alpha = 0 is the point_by_point case"
                )
            if self.alpha < 0.0:
                object.__setattr__(self, "alpha", -self.alpha)
                object.__setattr__(self, "phi0", -self.phi0)
                object.__setattr__(self, "factor_a", -self.factor_a)
        object.__setattr__(
            self,
            "coefficients",
            tuple((float(a), float(b)) for a, b in self.coefficients),
        )
        object.__setattr__(self, "root_indices", tuple(int(i) for i in self.root_indices))


def point_by_point_curve(
    amplitude: float,
    factor_a: float,
    phi0: float,
    domain: AngleInterval | None = None,
) -> InclinationCurve:
    """The family whose caustic reproduces the curve at equal angles.

    R = A exp(b theta) with b = (a - sin phi0)/cos phi0.  The circle is
    the degenerate member at a = sin(phi0) exactly.
    """
    phi0 = _check_phi0(phi0)
    if amplitude == 0.0:
        raise DegenerateCurveError("zero amplitude collapses the curve to a point")
    b = (factor_a - math.sin(phi0)) / math.cos(phi0)
    curve = log_spiral(amplitude, b, domain=domain or _WIDE)
    return InclinationCurve(
        radius_fn=curve.radius_fn,
        radius_derivative_fn=curve.radius_derivative_fn,
        domain=curve.domain,
        label=f"skew_point(A={amplitude:g}, a={factor_a:g}, phi0={phi0:g})",
    )


def inverse_position_curve(
    amplitude_a: float,
    amplitude_b: float,
    factor_a: float,
    phi0: float,
    domain: AngleInterval | None = None,
) -> InclinationCurve:
    """The family whose caustic runs through the curve angle-reversed.

    Solves R'' + omega^2 R = 0 with
    omega^2 = (a^2 - sin(phi0)^2)/cos(phi0)^2; the sign of omega^2 selects
    trigonometric, linear (circle involute, exactly at a = +-sin phi0) or
    hyperbolic amplitudes.
    """
    phi0 = _check_phi0(phi0)
    if amplitude_a == 0.0 and amplitude_b == 0.0:
        raise DegenerateCurveError("both amplitudes vanish; the curve is a point")
    s, c = math.sin(phi0), math.cos(phi0)
    omega_sq = (factor_a - s) * (factor_a + s) / (c * c)
    dom = domain or _WIDE
    A, B = float(amplitude_a), float(amplitude_b)
    if omega_sq > 0.0:
        w = math.sqrt(omega_sq)
        return InclinationCurve(
            radius_fn=lambda t: A * np.cos(w * np.asarray(t, dtype=float))
            + B * np.sin(w * np.asarray(t, dtype=float)),
            radius_derivative_fn=lambda t: -A * w * np.sin(w * np.asarray(t, dtype=float))
            + B * w * np.cos(w * np.asarray(t, dtype=float)),
            domain=dom,
            label=f"skew_inverse(A={A:g}, B={B:g}, omega={w:g})",
        )
    if omega_sq == 0.0:
        return InclinationCurve(
            radius_fn=lambda t: A + B * np.asarray(t, dtype=float),
            radius_derivative_fn=lambda t: np.full_like(np.asarray(t, dtype=float), B),
            domain=dom,
            label=f"circle_involute(A={A:g}, B={B:g})",
        )
    w = math.sqrt(-omega_sq)
    return InclinationCurve(
        radius_fn=lambda t: A * np.cosh(w * np.asarray(t, dtype=float))
        + B * np.sinh(w * np.asarray(t, dtype=float)),
        radius_derivative_fn=lambda t: A * w * np.sinh(w * np.asarray(t, dtype=float))
        + B * w * np.cosh(w * np.asarray(t, dtype=float)),
        domain=dom,
        label=f"skew_inverse_hyp(A={A:g}, B={B:g}, omega={w:g})",
    )


def implied_alpha(amplitude_a: float, amplitude_b: float, factor_a: float, phi0: float) -> float:
    """The angle-reversal shift consistent with given oscillatory amplitudes.

    For the trigonometric inverse-position family the shift alpha is not
    free: matching coefficients of cos and sin determines it from A, B, a
    and phi0.  Defined for a^2 > sin(phi0)^2 (oscillatory members).
    """
    phi0 = _check_phi0(phi0)
    A, B = float(amplitude_a), float(amplitude_b)
    if A == 0.0 and B == 0.0:
        raise DegenerateCurveError("both amplitudes vanish")
    s, c = math.sin(phi0), math.cos(phi0)
    omega_sq = (factor_a - s) * (factor_a + s) / (c * c)
    if omega_sq <= 0.0:
        raise ValidationError(
            "implied_alpha is defined for the oscillatory family (a^2 > sin^2 phi0)"
        )
    w = math.sqrt(omega_sq)
    p = (B * w * c + A * s) / factor_a
    m = (-A * w * c + B * s) / factor_a
    denom = A * A + B * B
    cos_wa = (A * p - B * m) / denom
    sin_wa = (B * p + A * m) / denom
    mismatch = abs(cos_wa**2 + sin_wa**2 - 1.0)
    if mismatch > 1e-9:
        raise NumericError(f"no consistent shift: |cos^2+sin^2 - 1| = {mismatch:.3e}")
    return math.atan2(sin_wa, cos_wa) / w


def to_delay_form(factor_a: float, alpha: float, phi0: float) -> tuple[float, float, float]:
    """Normalise an advance problem (alpha < 0) to delay form.

    Reversing the angle maps solutions of the advance equation to
    solutions of the delay equation with flipped signs of a, alpha, phi0.
    """
    if alpha > 0:
        return float(factor_a), float(alpha), float(phi0)
    if alpha == 0.0:
        raise ValidationError("alpha = 0 is not a delay problem")
    return -float(factor_a), -float(alpha), -float(phi0)


@dataclass(frozen=True)
class CharacteristicRoot:
    """One exponential rate of the delay family, tagged by Lambert branch."""

    branch: int
    value: complex

    @property
    def xi(self) -> float:
        return self.value.real

    @property
    def eta(self) -> float:
        return self.value.imag

    @property
    def is_real(self) -> bool:
        return self.value.imag == 0.0


def delay_roots(
    factor_a: float,
    alpha: float,
    phi0: float,
    indices: Sequence[int] = (0, -1),
    require_real: bool = False,
) -> list[CharacteristicRoot]:
    """Exponential rates lambda with (lambda + tan phi0) e^(alpha lambda) = a / cos phi0.

    One root per requested Lambert branch:
    ``lambda_k = W_k(rhs)/alpha - tan(phi0)`` with
    ``rhs = alpha a e^(alpha tan phi0)/cos(phi0)``.  Each returned root is
    verified against the characteristic equation to 1e-10.

    With ``require_real`` the real branches are enforced: asking for a
    branch that is complex at this rhs raises ``BranchUnavailableError``
    listing the branches that are real.
    """
    phi0 = _check_phi0(phi0)
    if alpha <= 0.0:
        raise ValidationError(
            "delay_roots needs alpha > 0; use to_delay_form to normalise an advance problem"
        )
    tphi = math.tan(phi0)
    rhs = alpha * factor_a * math.exp(alpha * tphi) / math.cos(phi0)
    roots: list[CharacteristicRoot] = []
    for k in indices:
        w = lambert_w(int(k), rhs)
        lam = complex(w) / alpha - tphi
        if require_real and lam.imag != 0.0:
            available = real_branch_indices(rhs)
            raise BranchUnavailableError(
                f"branch {k} is not real at rhs = {rhs:.6g}; real branches: {available}"
            )
        resid = abs((lam + tphi) * cmath.exp(alpha * lam) - factor_a / math.cos(phi0))
        if resid > 1e-10:
            raise NumericError(
                f"characteristic residual {resid:.3e} on branch {k} exceeds 1e-10"
            )
        roots.append(CharacteristicRoot(branch=int(k), value=lam))
    return roots


def delay_curve(
    spec: SkewFamilySpec,
    roots: Sequence[CharacteristicRoot],
    domain: AngleInterval | None = None,
) -> InclinationCurve:
    """Real exponential-sum solution of the delay similarity problem.

    Each root contributes ``exp(xi theta) (A cos(eta theta) + B sin(eta
    theta))`` with its ``(A, B)`` pair from the spec.  Real roots use only
    A.  The coefficient list must match the root list position by
    position, and at least one coefficient must be nonzero.
    """
    if spec.case != "delay":
        raise ValidationError(f"spec is a {spec.case!r} problem, not delay")
    if len(spec.coefficients) != len(roots):
        raise ValidationError(
            f"{len(roots)} roots but {len(spec.coefficients)} coefficient pairs"
        )
    if all(a == 0.0 and b == 0.0 for a, b in spec.coefficients):
        raise DegenerateCurveError("all coefficients vanish; the curve is a point")
    xi = np.array([rt.xi for rt in roots])
    eta = np.array([rt.eta for rt in roots])
    amp_a = np.array([ab[0] for ab in spec.coefficients])
    amp_b = np.array([ab[1] for ab in spec.coefficients])

    def radius(t):
        t = np.asarray(t, dtype=float)[..., None]
        grow = np.exp(xi * t)
        return np.sum(grow * (amp_a * np.cos(eta * t) + amp_b * np.sin(eta * t)), axis=-1)

    def radius_prime(t):
        t = np.asarray(t, dtype=float)[..., None]
        grow = np.exp(xi * t)
        ca = amp_a * xi + amp_b * eta
        cb = amp_b * xi - amp_a * eta
        return np.sum(grow * (ca * np.cos(eta * t) + cb * np.sin(eta * t)), axis=-1)

    labels = ",".join(str(rt.branch) for rt in roots)
    return InclinationCurve(
        radius_fn=radius,
        radius_derivative_fn=radius_prime,
        domain=domain or _WIDE,
        label=f"skew_delay(branches={labels}, a={spec.factor_a:g}, alpha={spec.alpha:g})",
    )


def build_family(spec: SkewFamilySpec, domain: AngleInterval | None = None) -> InclinationCurve:
    """Construct the curve described by a family spec."""
    if spec.case == "point_by_point":
        return point_by_point_curve(
            spec.coefficients[0][0], spec.factor_a, spec.phi0, domain=domain
        )
    if spec.case == "inverse_position":
        a0, b0 = spec.coefficients[0]
        return inverse_position_curve(a0, b0, spec.factor_a, spec.phi0, domain=domain)
    roots = delay_roots(spec.factor_a, spec.alpha, spec.phi0, spec.root_indices)
    return delay_curve(spec, roots, domain=domain)


def skew_equation_residual(
    curve: InclinationCurve,
    phi0: float,
    factor_a: float,
    case: str,
    interval: AngleInterval,
    alpha: float = 0.0,
) -> float:
    """Sup-norm defect of the constant-tilt similarity equation on a grid."""
    phi0 = _check_phi0(phi0)
    if case not in _CASES:
        raise ValidationError(f"case must be one of {_CASES}, got {case!r}")
    thetas = interval.grid()
    if case == "point_by_point":
        arg = thetas
    elif case == "inverse_position":
        arg = alpha - thetas
    else:
        arg = thetas - alpha
    if not curve.domain.contains(arg):
        raise DomainError("shifted argument leaves the curve domain; widen the domain")
    lhs = math.cos(phi0) * np.asarray(curve.radius_prime(thetas), dtype=float) + math.sin(
        phi0
    ) * np.asarray(curve.radius(thetas), dtype=float)
    rhs = factor_a * np.asarray(curve.radius(arg), dtype=float)
    return float(np.max(np.abs(lhs - rhs)))


# ---------------------------------------------------------------------------
# cuspidal spirals


def puiseux_curve(
    c: float, gamma: float, domain: AngleInterval | None = None
) -> InclinationCurve:
    """R = exp(c theta) sin(gamma theta): cusps every pi/gamma."""
    if gamma <= 0.0:
        raise ValidationError("gamma must be positive")
    return InclinationCurve(
        radius_fn=lambda t: np.exp(c * np.asarray(t, dtype=float))
        * np.sin(gamma * np.asarray(t, dtype=float)),
        radius_derivative_fn=lambda t: np.exp(c * np.asarray(t, dtype=float))
        * (
            c * np.sin(gamma * np.asarray(t, dtype=float))
            + gamma * np.cos(gamma * np.asarray(t, dtype=float))
        ),
        domain=domain or AngleInterval(-8 * math.pi, 8 * math.pi, 2049),
        label=f"puiseux(c={c:g}, gamma={gamma:g})",
    )


def _puiseux_antiderivative(c: float, gamma: float, theta: np.ndarray) -> np.ndarray:
    """Closed-form antiderivative of R (cos, sin) for the cuspidal spiral.

    Chosen so that it tends to 0 as the spiral winds into its limit point;
    the reconstruction then satisfies r(theta) = center + F(theta).
    """
    wp, wm = gamma + 1.0, gamma - 1.0
    dp, dm = c * c + wp * wp, c * c + wm * wm
    if dm == 0.0:
        raise ValidationError("c = 0, gamma = 1 has no spiral centre (cusps on a line)")
    t = np.asarray(theta, dtype=float)
    e = np.exp(c * t)
    fx = 0.5 * e * (
        (c * np.sin(wp * t) - wp * np.cos(wp * t)) / dp
        + (c * np.sin(wm * t) - wm * np.cos(wm * t)) / dm
    )
    fy = 0.5 * e * (
        (c * np.cos(wm * t) + wm * np.sin(wm * t)) / dm
        - (c * np.cos(wp * t) + wp * np.sin(wp * t)) / dp
    )
    return np.stack([fx, fy], axis=-1)


@dataclass(frozen=True)
class PuiseuxReport:
    """Cusp geometry of a cuspidal spiral."""

    c: float
    gamma: float
    cusp_thetas: tuple[float, ...]
    cusp_points: tuple[PlanePoint, ...]
    center: PlanePoint | None
    distances: tuple[float, ...]
    ratios: tuple[float, ...]
    expected_ratio: float
    max_ratio_deviation: float


def puiseux_diagnostics(
    c: float,
    gamma: float,
    interval: AngleInterval,
    anchor: PlanePoint | tuple[float, float] = (0.0, 0.0),
) -> PuiseuxReport:
    """Locate the cusps of R = exp(c theta) sin(gamma theta) and measure them.

    Cusp angles come from sign changes of R; positions from quadrature
    reconstruction on a grid that contains the cusp angles exactly.  For a
    genuine spiral the distances of successive cusps from the centre form
    a geometric progression with ratio exp(c pi / gamma); the report
    carries the measured ratios and their worst deviation from that value.
    The doubly degenerate c = 0, gamma = 1 case has no centre; there the
    ratios compare successive cusp-to-cusp chords instead.
    """
    curve = puiseux_curve(c, gamma)
    cusps = find_cusps(curve, interval)
    if len(cusps) < 3:
        raise ValidationError(
            f"interval holds only {len(cusps)} cusps; need at least 3 for ratios"
        )
    grid = np.union1d(interval.grid(), np.asarray(cusps))
    samples = reconstruct(curve, grid, anchor=anchor)
    thetas = np.array([s.theta for s in samples])
    idx = np.searchsorted(thetas, cusps)
    points = [samples[i].position for i in idx]

    expected = math.exp(c * math.pi / gamma)
    degenerate = c == 0.0 and gamma == 1.0
    if degenerate:
        center = None
        pts = np.asarray(points)
        dists = np.linalg.norm(np.diff(pts, axis=0), axis=1)
    else:
        start = samples[0]
        f0 = _puiseux_antiderivative(c, gamma, np.array([start.theta]))[0]
        center = PlanePoint(start.position.x - f0[0], start.position.y - f0[1])
        pts = np.asarray(points)
        dists = np.linalg.norm(pts - np.array(center), axis=1)
    ratios = dists[1:] / dists[:-1]
    deviation = float(np.max(np.abs(ratios - expected))) if ratios.size else math.nan
    return PuiseuxReport(
        c=float(c),
        gamma=float(gamma),
        cusp_thetas=tuple(float(t) for t in cusps),
        cusp_points=tuple(points),
        center=center,
        distances=tuple(float(d) for d in dists),
        ratios=tuple(float(r) for r in ratios),
        expected_ratio=expected,
        max_ratio_deviation=deviation,
    )
