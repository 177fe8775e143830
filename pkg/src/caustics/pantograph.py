"""Mirrors whose reflection caustic is a scaled copy of themselves.

A vertical mirror re-imaging horizontal light onto itself satisfies the
pantograph equation

    sin(theta) R'(theta) = 4 a R(2 theta) - 3 cos(theta) R(theta),

whose analytic solutions come in one family per integer k: the auxiliary
profile Q = R / sin(theta) is a power series starting at theta^k, the
scale factor is forced to a = (k+4) / 2^(k+3), and the remaining
coefficients follow from a tangent-weighted recursion.  The series
converges on |theta| < pi/2 only; values beyond are produced by the
doubling identity R(2u) = (3 cos(u) R(u) + sin(u) R'(u)) / (4a), applied
to Taylor jets so that each doubling can pay for the derivative it
consumes.

The cycloid is the member k = 0 (Q constant); k = -4 degenerates to the
parabola, which gets its own closed form here because its caustic is a
single point rather than a scaled mirror.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import (
    DegenerateCurveError,
    DomainError,
    JetDepthError,
    NumericError,
    ResonanceError,
    ValidationError,
)
from .inclination import (
    AngleInterval,
    InclinationCurve,
    PlanePoint,
    find_cusps,
    reconstruct,
)
from .oracle import occlusion_check, verticality_check
from .specfun import tan_coeffs

__all__ = [
    "BASE_GUARD",
    "PantographSeries",
    "PantographSolution",
    "similarity_factor",
    "solve_series",
    "eval_Q",
    "eval_R_base",
    "continue_R",
    "solution_curve",
    "overlay_caustic_points",
    "mirror_equation_residual",
    "auxiliary_equation_residual",
    "MirrorReport",
    "mirror_report",
    "parabola_mirror",
    "parabola_position",
    "parabola_focus",
]

BASE_GUARD = 1e-3
"""Stay this far inside the series' convergence half-width pi/2."""


def similarity_factor(k: int) -> Fraction:
    """Scale factor a = (k+4)/2^(k+3) forced on the family with lowest power k.

    In terms of the mirror exponent m = k + 1 this is (m+3)/2^(m+2).
    """
    k = _check_k(k)
    return Fraction(k + 4) / Fraction(2) ** (k + 3)


def _check_k(k) -> int:
    if not isinstance(k, (int, np.integer)) or isinstance(k, bool):
        raise ValidationError(f"k must be an integer, got {k!r}")
    k = int(k)
    if k == -4:
        raise ValidationError(
            "k = -4 collapses the scale factor to 0; that member is the "
            "parabola, served in closed form by parabola_mirror"
        )
    if k < -4:
        raise ValidationError(f"no self-reproducing mirror exists for k = {k} < -4")
    return k


@dataclass(frozen=True)
class PantographSeries:
    """Truncated auxiliary profile Q(theta) = sum_n a_n theta^n, n = k..n_max.

    ``coefficients[j]`` is a_{k+j}.  Coefficients of parity opposite to k
    vanish, except that the resonant family k = -3 carries a free
    ``secondary_coeff`` a_{-2} seeding the opposite parity.  ``exact``
    optionally retains the rational coefficients the floats were rounded
    from.
    """

    k: int
    factor_a: float
    n_max: int
    coefficients: np.ndarray
    exact: tuple[Fraction, ...] | None = None
    secondary_coeff: float | None = None

    def __post_init__(self):
        if self.n_max <= self.k:
            raise ValidationError("truncation order must exceed the lowest power k")
        if len(self.coefficients) != self.n_max - self.k + 1:
            raise ValidationError(
                f"expected {self.n_max - self.k + 1} coefficients, "
                f"got {len(self.coefficients)}"
            )

    def coefficient(self, n: int) -> float:
        """a_n as a float (0 outside the stored range)."""
        if n < self.k or n > self.n_max:
            return 0.0
        return float(self.coefficients[n - self.k])

    def powers(self) -> np.ndarray:
        return self.k + np.arange(len(self.coefficients))

    def q_derivatives(self, theta: float, order: int) -> np.ndarray:
        """Values Q(theta), Q'(theta), ..., Q^(order)(theta), term by term."""
        c = np.asarray(self.coefficients, dtype=float).copy()
        e = self.powers().astype(float)
        out = np.empty(order + 1)
        for j in range(order + 1):
            # Differentiation kills terms (c becomes 0 while e goes negative);
            # skip them so theta = 0 does not manufacture 0 * inf.
            live = c != 0.0
            out[j] = float(np.sum(c[live] * theta ** e[live])) if live.any() else 0.0
            c *= e
            e -= 1.0
        return out


def solve_series(
    k: int,
    n_max: int = 30,
    leading: float = 1.0,
    secondary: float | None = None,
    exact: bool = False,
) -> PantographSeries:
    """Run the coefficient recursion for the family with lowest power k.

    a_n = [sum_{i>=1} tau_i (n-2i) a_{n-2i}] / (2^(n+3) a - n - 4), with
    tau the odd tangent coefficients.  Everything is carried in exact
    rationals; pass ``exact=True`` to keep them on the result.  The
    denominators are checked to be strictly positive for n > k, with the
    single exception n = k+1 of the k = -3 family, where the equation
    degenerates to 0 = 0 and a_{-2} becomes a free second parameter
    (``secondary``, accepted only there).
    """
    k = _check_k(k)
    if n_max <= k:
        raise ValidationError(f"n_max must exceed k, got n_max={n_max}, k={k}")
    if leading == 0.0:
        raise ValidationError("the leading coefficient a_k must be nonzero")
    if secondary is not None and k != -3:
        raise ValidationError("a secondary coefficient exists only for k = -3")
    a = similarity_factor(k)
    tau = tan_coeffs(max(1, (n_max - k) // 2 + 1)).exact
    coeffs: dict[int, Fraction] = {k: Fraction(leading)}
    for n in range(k + 1, n_max + 1):
        den = Fraction(2) ** (n + 3) * a - n - 4
        num = Fraction(0)
        i = 1
        while n - 2 * i >= k:
            num += tau[i] * (n - 2 * i) * coeffs[n - 2 * i]
            i += 1
        if den == 0:
            if k == -3 and n == -2:
                if secondary is None:
                    raise ResonanceError(
                        "k = -3 resonates at n = -2 (denominator 0): supply the "
                        "free secondary coefficient a_{-2}"
                    )
                coeffs[n] = Fraction(secondary)
                continue
            raise NumericError(f"unexpected zero denominator at n = {n} for k = {k}")
        if den < 0:
            raise NumericError(f"denominator lost positivity at n = {n} for k = {k}")
        coeffs[n] = num / den
    ordered = [coeffs[n] for n in range(k, n_max + 1)]
    return PantographSeries(
        k=k,
        factor_a=float(a),
        n_max=int(n_max),
        coefficients=np.array([float(c) for c in ordered]),
        exact=tuple(ordered) if exact else None,
        secondary_coeff=None if secondary is None else float(secondary),
    )


def eval_Q(series: PantographSeries, theta) -> np.ndarray | float:
    """Evaluate the auxiliary profile inside its convergence window."""
    theta = np.asarray(theta, dtype=float)
    _require_base_window(theta)
    poly = np.zeros_like(theta)
    for c in series.coefficients[::-1]:
        poly = poly * theta + c
    out = poly if series.k == 0 else poly * theta**series.k
    return out if out.shape else float(out)


def _require_base_window(theta: np.ndarray) -> None:
    limit = math.pi / 2 - BASE_GUARD
    if np.any(np.abs(theta) > limit):
        worst = float(np.max(np.abs(theta)))
        raise DomainError(
            f"|theta| = {worst:g} leaves the series window |theta| <= pi/2 - "
            f"{BASE_GUARD:g}; use continue_R for the extension"
        )


def eval_R_base(series: PantographSeries, theta: float, jet_order: int = 1) -> np.ndarray:
    """Derivatives R, R', ..., R^(jet_order) at one angle in the base window.

    R = Q sin(theta); derivatives come from the general product rule over
    the term-wise derivatives of Q and the four-cycle of sine derivatives.
    """
    theta = float(theta)
    _require_base_window(np.asarray(theta))
    if jet_order < 0:
        raise ValidationError("jet_order must be non-negative")
    q = series.q_derivatives(theta, jet_order)
    sin_cycle = (math.sin(theta), math.cos(theta), -math.sin(theta), -math.cos(theta))
    out = np.empty(jet_order + 1)
    for j in range(jet_order + 1):
        acc = 0.0
        for i in range(j + 1):
            acc += math.comb(j, i) * q[i] * sin_cycle[(j - i) % 4]
        out[j] = acc
    return out


@dataclass(frozen=True)
class PantographSolution:
    """A mirror profile extended beyond the series window by doubling.

    ``jet_order`` bounds the doubling depth: reaching an angle needs one
    Taylor order per doubling plus one for the derivative, so angles up to
    2^(jet_order - 1) (pi/2 - guard) are available.
    """

    series: PantographSeries
    jet_order: int = 12
    guard: float = BASE_GUARD

    def __post_init__(self):
        if self.jet_order < 2:
            raise ValidationError("jet_order must be at least 2")
        if not 0.0 < self.guard < math.pi / 4:
            raise ValidationError("guard must lie in (0, pi/4)")

    @property
    def max_theta(self) -> float:
        return 2.0 ** (self.jet_order - 1) * (math.pi / 2 - self.guard)


def _trig_taylor(u: float, length: int) -> tuple[np.ndarray, np.ndarray]:
    """Taylor coefficients of sin(u+h) and cos(u+h) in h, up to h^(length-1)."""
    s, c = math.sin(u), math.cos(u)
    sin_cycle = (s, c, -s, -c)
    cos_cycle = (c, -s, -c, s)
    fact = 1.0
    sj = np.empty(length)
    cj = np.empty(length)
    for j in range(length):
        if j:
            fact *= j
        sj[j] = sin_cycle[j % 4] / fact
        cj[j] = cos_cycle[j % 4] / fact
    return sj, cj


def _conv_trunc(a: np.ndarray, b: np.ndarray, length: int) -> np.ndarray:
    return np.convolve(a[:length], b[:length])[:length]


def _continue_one(solution: PantographSolution, theta: float) -> tuple[float, float]:
    if theta < 0.0:
        raise ValidationError(f"continuation is defined for theta >= 0, got {theta:g}")
    limit = math.pi / 2 - solution.guard
    series = solution.series
    if theta <= limit:
        r = eval_R_base(series, theta, jet_order=1)
        return float(r[0]), float(r[1])
    depth = max(1, int(math.ceil(math.log2(theta / limit))))
    while theta / 2.0**depth > limit:
        depth += 1
    if depth + 1 > solution.jet_order:
        raise JetDepthError(
            f"theta = {theta:g} needs doubling depth {depth}; configure "
            f"jet_order >= {depth + 1}"
        )
    u = theta / 2.0**depth
    order = depth + 1
    ders = eval_R_base(series, u, jet_order=order)
    fact = np.cumprod(np.concatenate(([1.0], np.arange(1.0, order + 1))))
    taylor = ders / fact
    inv_4a = 1.0 / (4.0 * series.factor_a)
    for _ in range(depth):
        length = len(taylor) - 1
        deriv = taylor[1:] * np.arange(1.0, len(taylor))
        sj, cj = _trig_taylor(u, length)
        f = (3.0 * _conv_trunc(cj, taylor, length) + _conv_trunc(sj, deriv, length)) * inv_4a
        taylor = f / 2.0 ** np.arange(length)
        u *= 2.0
    return float(taylor[0]), float(taylor[1])


def continue_R(solution: PantographSolution, theta):
    """R and R' anywhere on [0, max_theta], by jet doubling past pi/2.

    Accepts scalars or arrays; returns a pair (R, R') of matching shape.
    """
    arr = np.asarray(theta, dtype=float)
    flat = np.atleast_1d(arr).ravel()
    r = np.empty_like(flat)
    rp = np.empty_like(flat)
    for i, t in enumerate(flat):
        r[i], rp[i] = _continue_one(solution, float(t))
    if arr.ndim == 0:
        return float(r[0]), float(rp[0])
    return r.reshape(arr.shape), rp.reshape(arr.shape)


def solution_curve(
    solution: PantographSolution,
    domain: AngleInterval | None = None,
) -> InclinationCurve:
    """Wrap a continued solution as a turning-radius curve.

    Families with k <= -1 have a pole of Q at theta = 0, declared so that
    reconstruction keeps its guard band away from it.
    """
    k = solution.series.k
    dom = domain or AngleInterval(0.0, 4 * math.pi, 1025)
    if dom.hi > solution.max_theta:
        raise ValidationError(
            f"domain reaches {dom.hi:g} but jet_order {solution.jet_order} only "
            f"serves theta <= {solution.max_theta:g}"
        )
    return InclinationCurve(
        radius_fn=lambda t: continue_R(solution, t)[0],
        radius_derivative_fn=lambda t: continue_R(solution, t)[1],
        domain=dom,
        label=f"pantograph(k={k}, a={solution.series.factor_a:g})",
        poles=(0.0,) if k <= -1 else (),
    )


def overlay_caustic_points(
    solution: PantographSolution,
    thetas: np.ndarray,
    anchor: PlanePoint | tuple[float, float] = (0.0, 0.0),
) -> np.ndarray:
    """Caustic points of the mirror for horizontal light, via the overlay map.

    The pantograph equation makes the caustic the homothety
    c(theta) = a r(2 theta) + (1 - a) r(0) of the mirror itself; this
    evaluates it from a reconstruction over the doubled angles.
    """
    thetas = np.asarray(thetas, dtype=float)
    a = solution.series.factor_a
    curve = solution_curve(
        solution, AngleInterval(0.0, max(2 * float(np.max(thetas)), 1.0), 9)
    )
    grid = np.union1d(np.array([0.0]), 2.0 * thetas)
    samples = reconstruct(curve, grid, anchor=anchor)
    by_theta = {s.theta: s.position for s in samples}
    origin = np.asarray(by_theta[0.0])
    pts = np.array([by_theta[t] for t in 2.0 * thetas])
    return a * pts + (1.0 - a) * origin


def mirror_equation_residual(
    solution: PantographSolution, interval: AngleInterval | None = None
) -> float:
    """Sup-norm defect of sin(theta) R' - 4a R(2 theta) + 3 cos(theta) R."""
    interval = interval or AngleInterval(0.01, 2 * math.pi, 257)
    if interval.lo < 0.0:
        raise ValidationError("the continued solution lives on theta >= 0")
    t = interval.grid()
    r, rp = continue_R(solution, t)
    r2, _ = continue_R(solution, 2.0 * t)
    a = solution.series.factor_a
    return float(np.max(np.abs(np.sin(t) * rp - 4.0 * a * r2 + 3.0 * np.cos(t) * r)))


def auxiliary_equation_residual(
    solution: PantographSolution, interval: AngleInterval | None = None
) -> float:
    """Sup-norm defect of tan(theta) Q' - 8a Q(2 theta) + 4 Q(theta).

    Checked on (0, pi/2); Q beyond the window is recovered as
    R / sin(theta) from the continuation.
    """
    interval = interval or AngleInterval(0.01, math.pi / 2 - 0.01, 257)
    if not (0.0 < interval.lo and interval.hi < math.pi / 2):
        raise ValidationError("the auxiliary equation is checked inside (0, pi/2)")
    t = interval.grid()
    r, rp = continue_R(solution, t)
    st, ct = np.sin(t), np.cos(t)
    q = r / st
    qp = (rp - q * ct) / st
    r2, _ = continue_R(solution, 2.0 * t)
    q2 = r2 / np.sin(2.0 * t)
    a = solution.series.factor_a
    return float(np.max(np.abs(np.tan(t) * qp - 8.0 * a * q2 + 4.0 * q)))


_COLLINEARITY_THETAS = (0.0, math.pi / 2, math.pi, 2 * math.pi, 4 * math.pi)


def _collinearity_residual(points: np.ndarray) -> float:
    centered = points - points.mean(axis=0)
    _, _, vt = np.linalg.svd(centered, full_matrices=False)
    normal = vt[-1]
    return float(np.max(np.abs(centered @ normal)))


@dataclass(frozen=True)
class MirrorReport:
    """Diagnostics bundle for one continued mirror profile."""

    label: str
    zeros: tuple[float, ...]
    zero_deviations: tuple[float, ...]
    mirror_cusp_points: tuple[PlanePoint, ...]
    caustic_cusp_points: tuple[PlanePoint, ...]
    collinearity_points: tuple[PlanePoint, ...]
    collinearity_residual: float
    rho_min: float
    rho_max: float
    rho_spread: float
    q_growth: float
    q_has_pole: bool
    is_vertical: bool
    has_occlusion: bool

    def as_mapping(self) -> dict[str, object]:
        """Flat key=value view for reports and the command line."""
        return {
            "label": self.label,
            "zeros": list(self.zeros),
            "zero_deviations": list(self.zero_deviations),
            "collinearity_residual": self.collinearity_residual,
            "rho_min": self.rho_min,
            "rho_max": self.rho_max,
            "rho_spread": self.rho_spread,
            "q_growth": self.q_growth,
            "q_has_pole": self.q_has_pole,
            "is_vertical": self.is_vertical,
            "has_occlusion": self.has_occlusion,
        }


def mirror_report(
    solution: PantographSolution, interval: AngleInterval | None = None
) -> MirrorReport:
    """Measure one mirror: cusps, cusp line, arc ratios, pole, feasibility.

    The bundle collects (a) zeros of R and their deviations from multiples
    of pi, (b) mirror and caustic cusp positions plus the residual of the
    cusp chain nearest theta = 0, pi/2, pi, 2pi, 4pi from its best-fit
    line (zero exactly for the cycloid, whose cusps share the y-axis),
    (c) the arc ratio rho(theta) = |R(theta + pi) / R(theta)| on a window
    avoiding the singular angles, (d) the growth of |Q| = |R / sin|
    toward pi as a pole indicator, and (e) verticality / occlusion flags
    for the reconstructed profile.
    """
    series = solution.series
    if series.k < 0:
        raise ValidationError(
            "the report assumes a mirror with horizontal tangent at theta = 0 (k >= 0)"
        )
    interval = interval or AngleInterval(0.0, 4 * math.pi, 2049)
    if interval.lo < 0.0:
        raise ValidationError("the continued solution lives on theta >= 0")
    far = max(2 * _COLLINEARITY_THETAS[-1], interval.hi) + 4 * math.pi
    curve = solution_curve(solution, AngleInterval(0.0, far + 0.1, 9))

    all_zeros = find_cusps(curve, AngleInterval(0.0, far, 513))
    zeros = [z for z in all_zeros if interval.contains(z)]
    deviations = [z - math.pi * round(z / math.pi) for z in zeros]

    # The cusp chain of interest doubles the arc count at each step: the
    # 1st, 2nd, 4th and 8th cusps, which sit exactly at pi, 2pi, 4pi, 8pi
    # when the profile is vertical.  Non-vertical profiles drift off the
    # multiples of pi, so the chain is indexed ordinally, not by angle.
    if len(all_zeros) < 8:
        raise NumericError(
            f"only {len(all_zeros)} sign changes below {far:.3g}; "
            "the cusp chain needs eight"
        )
    chain = [all_zeros[i] for i in (0, 1, 3, 7)]

    base_grid = np.linspace(interval.lo, interval.hi, interval.n_samples)
    grid = np.union1d(base_grid, all_zeros)
    grid = np.union1d(grid, np.array([0.0]))
    samples = reconstruct(curve, grid, anchor=(0.0, 0.0))
    thetas = np.array([s.theta for s in samples])
    pts = np.array([s.position for s in samples])

    def at(angle: float) -> np.ndarray:
        idx = int(np.searchsorted(thetas, angle))
        if idx >= len(thetas) or abs(thetas[idx] - angle) > 1e-12:
            raise NumericError(f"angle {angle:g} missing from the reconstruction grid")
        return pts[idx]

    a = series.factor_a
    origin = at(0.0)
    mirror_cusps = [PlanePoint(*at(z)) for z in zeros]
    caustic_cusps = [PlanePoint(*(a * at(z) + (1.0 - a) * origin)) for z in zeros]
    line_pts = np.array([origin] + [a * at(z) + (1.0 - a) * origin for z in chain])
    residual = _collinearity_residual(line_pts)

    rho_lo, rho_hi = 0.3, math.pi - 0.3
    rt = np.linspace(rho_lo, rho_hi, 101)
    r_num, _ = continue_R(solution, rt + math.pi)
    r_den, _ = continue_R(solution, rt)
    rho = np.abs(r_num / r_den)
    rho_min, rho_max = float(np.min(rho)), float(np.max(rho))

    qt = np.linspace(math.pi - 0.5, math.pi - 0.02, 25)
    rq, _ = continue_R(solution, qt)
    q_abs = np.abs(rq / np.sin(qt))
    growth = float(q_abs[-1] / q_abs[0])

    # Feasibility flags are judged on the evenly spaced profile samples.
    # The union grid is unsuitable here: a bisected zero can land within
    # ~1e-12 of a plain node, and the y-step between such twins underflows
    # to exactly zero, which a strict monotonicity test must reject.
    body_idx = np.searchsorted(thetas, base_grid)
    body = pts[body_idx]
    vertical = verticality_check(body).is_vertical
    occluded = occlusion_check(body).has_occlusion

    return MirrorReport(
        label=curve.label,
        zeros=tuple(float(z) for z in zeros),
        zero_deviations=tuple(float(d) for d in deviations),
        mirror_cusp_points=tuple(mirror_cusps),
        caustic_cusp_points=tuple(caustic_cusps),
        collinearity_points=tuple(PlanePoint(*p) for p in line_pts),
        collinearity_residual=residual,
        rho_min=rho_min,
        rho_max=rho_max,
        rho_spread=rho_max - rho_min,
        q_growth=growth,
        q_has_pole=growth > 10.0,
        is_vertical=vertical,
        has_occlusion=occluded,
    )


# ---------------------------------------------------------------------------
# the degenerate member: parabola


def parabola_mirror(focal_scale: float, domain: AngleInterval | None = None) -> InclinationCurve:
    """The mirror whose caustic for horizontal light is a single point.

    R(theta) = A / sin^3(theta) on (0, pi).  With the anchor
    (-A/(2 sin^2 theta0), -A cot theta0) the reconstruction traces the
    parabola y^2 + 2 A x = -A^2, whose focus sits at (-A, 0).
    """
    if focal_scale == 0.0:
        raise DegenerateCurveError("A = 0 collapses the parabola to a point")
    A = float(focal_scale)
    dom = domain or AngleInterval(0.0, math.pi, 513)
    if dom.lo < 0.0 or dom.hi > math.pi:
        raise ValidationError("the parabola profile lives on (0, pi)")
    return InclinationCurve(
        radius_fn=lambda t: A / np.sin(np.asarray(t, dtype=float)) ** 3,
        radius_derivative_fn=lambda t: -3.0
        * A
        * np.cos(np.asarray(t, dtype=float))
        / np.sin(np.asarray(t, dtype=float)) ** 4,
        domain=dom,
        label=f"parabola(A={A:g})",
        poles=(0.0, math.pi),
    )


def parabola_position(focal_scale: float, theta) -> PlanePoint | np.ndarray:
    """Closed-form point of the parabola profile at inclination theta."""
    t = np.asarray(theta, dtype=float)
    A = float(focal_scale)
    s = np.sin(t)
    x = -A / (2.0 * s * s)
    y = -A * np.cos(t) / s
    if t.shape:
        return np.stack([x, y], axis=-1)
    return PlanePoint(float(x), float(y))


def parabola_focus(focal_scale: float) -> PlanePoint:
    """The caustic of the parabola profile collapses onto this point."""
    return PlanePoint(-float(focal_scale), 0.0)
