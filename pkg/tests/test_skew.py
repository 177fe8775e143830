"""Constant-tilt families: point-by-point, inverse-position, delay, spirals."""

import cmath
import math

import numpy as np
import pytest

from caustics.errors import (
    BranchUnavailableError,
    DegenerateCurveError,
    ValidationError,
)
from caustics.inclination import AngleInterval
from caustics.skew import (
    CharacteristicRoot,
    SkewFamilySpec,
    build_family,
    delay_curve,
    delay_roots,
    implied_alpha,
    inverse_position_curve,
    point_by_point_curve,
    puiseux_curve,
    puiseux_diagnostics,
    skew_equation_residual,
    to_delay_form,
)

WINDOW = AngleInterval(-math.pi, math.pi, 257)


def second_derivative(curve, t, h=1e-4):
    # differentiate the analytic first derivative: far better conditioned
    # than a direct second-difference of the radius
    f = curve.radius_prime
    return (f(t - 2 * h) - 8 * f(t - h) + 8 * f(t + h) - f(t + 2 * h)) / (12 * h)


def test_point_by_point_satisfies_equation():
    curve = point_by_point_curve(1.3, 0.8, 0.4)
    res = skew_equation_residual(curve, 0.4, 0.8, "point_by_point", WINDOW)
    assert res < 1e-9


def test_point_by_point_circle_degeneration_is_exact():
    phi0 = 0.37
    curve = point_by_point_curve(2.0, math.sin(phi0), phi0)
    t = np.linspace(-3.0, 3.0, 11)
    assert np.all(curve.radius(t) == 2.0)
    off = point_by_point_curve(2.0, math.sin(phi0) + 1e-12, phi0)
    assert off.radius(3.0) != off.radius(-3.0)


def test_inverse_position_branches_and_ode(rng):
    for _ in range(12):
        phi0 = rng.uniform(-1.2, 1.2)
        a = rng.uniform(-2.0, 2.0)
        if abs(a * a - math.sin(phi0) ** 2) < 0.05:
            continue
        A, B = rng.uniform(0.3, 2.0, size=2)
        curve = inverse_position_curve(A, B, a, phi0)
        omega_sq = (a * a - math.sin(phi0) ** 2) / math.cos(phi0) ** 2
        t = np.linspace(-1.5, 1.5, 41)
        resid = second_derivative(curve, t) + omega_sq * curve.radius(t)
        assert np.max(np.abs(resid)) < 1e-9 * max(1.0, np.max(np.abs(curve.radius(t))))


def test_inverse_position_involute_triggers_exactly():
    phi0 = 0.6
    a = math.sin(phi0)
    lin = inverse_position_curve(1.0, 0.5, a, phi0)
    assert lin.label.startswith("circle_involute")
    t = np.array([0.0, 1.0, 2.0])
    r = lin.radius(t)
    assert r[2] - 2 * r[1] + r[0] == 0.0
    assert inverse_position_curve(1.0, 0.5, -a, phi0).label.startswith("circle_involute")
    near = inverse_position_curve(1.0, 0.5, a + 1e-9, phi0)
    assert not near.label.startswith("circle_involute")


def test_inverse_position_equation_with_implied_shift(rng):
    for _ in range(10):
        phi0 = rng.uniform(-1.0, 1.0)
        a = math.copysign(rng.uniform(abs(math.sin(phi0)) + 0.2, 2.5), rng.uniform(-1, 1))
        A, B = rng.uniform(0.3, 2.0, size=2)
        curve = inverse_position_curve(A, B, a, phi0)
        alpha = implied_alpha(A, B, a, phi0)
        res = skew_equation_residual(curve, phi0, a, "inverse_position", WINDOW, alpha=alpha)
        assert res < 1e-9


def test_implied_alpha_frozen_value():
    assert abs(implied_alpha(1.0, 0.5, 1.2, 0.3) - (-0.324190211899301)) < 1e-12


def test_implied_alpha_requires_oscillation():
    with pytest.raises(ValidationError):
        implied_alpha(1.0, 0.5, 0.1, 0.6)  # a^2 < sin^2 phi0: hyperbolic


def test_delay_roots_frozen_values():
    roots = delay_roots(1.0, math.pi / 2, 0.0, indices=(0,))
    assert roots[0].is_real
    assert abs(roots[0].value.real - 0.47454099951265116) < 1e-12

    pair = delay_roots(1.0, math.pi / 2, 0.0, indices=(1, -1))
    lam = pair[0].value
    assert abs(lam.real - (-0.6845827467696126)) < 1e-12
    assert abs(abs(lam.imag) - 2.8499202881507237) < 1e-12
    assert abs(pair[1].value - lam.conjugate()) < 1e-12


def test_delay_roots_residual_bound(rng):
    for _ in range(20):
        a = rng.uniform(0.2, 2.0)
        alpha = rng.uniform(0.1, 2.0)
        phi0 = rng.uniform(-1.2, 1.2)
        for root in delay_roots(a, alpha, phi0, indices=(0, 1, -1, 2)):
            lam = root.value
            lhs = (lam + math.tan(phi0)) * cmath.exp(alpha * lam)
            assert abs(lhs - a / math.cos(phi0)) < 1e-10


def test_delay_roots_branch_availability():
    with pytest.raises(BranchUnavailableError, match="real branches"):
        delay_roots(1.0, math.pi / 2, 0.0, indices=(1,), require_real=True)
    with pytest.raises(ValidationError):
        delay_roots(1.0, -0.5, 0.0)


def test_advance_problems_normalise_to_delay():
    spec = SkewFamilySpec("delay", phi0=0.2, factor_a=0.9, alpha=-0.7)
    assert spec.alpha == 0.7
    assert spec.phi0 == -0.2
    assert spec.factor_a == -0.9
    assert to_delay_form(0.9, -0.7, 0.2) == (-0.9, 0.7, -0.2)


def test_delay_curve_single_real_root():
    spec = SkewFamilySpec("delay", phi0=0.0, factor_a=1.0, alpha=math.pi / 2)
    roots = delay_roots(1.0, math.pi / 2, 0.0, indices=(0,))
    curve = delay_curve(spec, roots)
    res = skew_equation_residual(curve, 0.0, 1.0, "delay", WINDOW, alpha=math.pi / 2)
    assert res < 1e-9


def test_delay_curve_oscillatory_branch():
    spec = SkewFamilySpec(
        "delay",
        phi0=0.0,
        factor_a=1.0,
        alpha=math.pi / 2,
        root_indices=(1,),
        coefficients=((0.7, -0.4),),
    )
    roots = delay_roots(1.0, math.pi / 2, 0.0, indices=(1,))
    curve = delay_curve(spec, roots)
    res = skew_equation_residual(curve, 0.0, 1.0, "delay", WINDOW, alpha=math.pi / 2)
    assert res < 1e-9


def test_delay_curve_validation():
    spec = SkewFamilySpec("delay", phi0=0.0, factor_a=1.0, alpha=1.0)
    roots = delay_roots(1.0, 1.0, 0.0, indices=(0, -1))
    with pytest.raises(ValidationError):
        delay_curve(spec, roots)  # one coefficient pair, two roots
    zero = SkewFamilySpec(
        "delay", phi0=0.0, factor_a=1.0, alpha=1.0, coefficients=((0.0, 0.0),)
    )
    with pytest.raises(DegenerateCurveError):
        delay_curve(zero, roots[:1])


def test_family_spec_validation():
    with pytest.raises(ValidationError):
        SkewFamilySpec("sideways", phi0=0.0, factor_a=1.0)
    with pytest.raises(ValidationError):
        SkewFamilySpec("point_by_point", phi0=math.pi / 2, factor_a=1.0)
    with pytest.raises(ValidationError):
        SkewFamilySpec("delay", phi0=0.0, factor_a=1.0, alpha=0.0)


def test_build_family_dispatch():
    point = build_family(SkewFamilySpec("point_by_point", phi0=0.3, factor_a=0.9))
    assert point.label.startswith("skew_point")
    inverse = build_family(
        SkewFamilySpec("inverse_position", phi0=0.3, factor_a=1.4, coefficients=((1.0, 0.2),))
    )
    assert inverse.label.startswith("skew_inverse")
    delay = build_family(SkewFamilySpec("delay", phi0=0.0, factor_a=1.0, alpha=1.0))
    assert delay.label.startswith("skew_delay")


def test_puiseux_cusps_and_ratios():
    report = puiseux_diagnostics(0.2, 3.0, AngleInterval(-0.1, 4 * math.pi + 0.1, 1025))
    for i, z in enumerate(report.cusp_thetas):
        n = round(z * 3.0 / math.pi)
        assert abs(z - n * math.pi / 3.0) < 1e-9
    assert report.center is not None
    assert abs(report.expected_ratio - math.exp(0.2 * math.pi / 3.0)) < 1e-15
    assert report.max_ratio_deviation < 1e-6
    ratios = np.asarray(report.ratios)
    assert np.max(np.abs(ratios - report.expected_ratio)) < 1e-6


def test_puiseux_degenerate_cycloid_chords():
    report = puiseux_diagnostics(0.0, 1.0, AngleInterval(-0.1, 4 * math.pi + 0.1, 1025))
    assert report.center is None
    assert abs(report.expected_ratio - 1.0) < 1e-15
    assert report.max_ratio_deviation < 1e-9


def test_puiseux_needs_three_cusps():
    with pytest.raises(ValidationError):
        puiseux_diagnostics(0.2, 3.0, AngleInterval(0.1, 1.0, 65))


def test_puiseux_curve_cusp_count():
    curve = puiseux_curve(0.2, 3.0)
    from caustics.inclination import find_cusps

    cusps = find_cusps(curve, AngleInterval(-0.1, 2 * math.pi + 0.1, 257))
    assert len(cusps) == 7  # n pi / 3 for n = 0..6
