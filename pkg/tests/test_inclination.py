"""Curve reconstruction from the turning radius and its invariants."""

import math

import numpy as np
import pytest

from caustics.errors import (
    DegenerateSamplingError,
    DomainError,
    ValidationError,
)
from caustics.inclination import (
    AngleInterval,
    InclinationCurve,
    circle,
    classify_zeros,
    cycloid,
    find_cusps,
    frenet_residual,
    log_spiral,
    polynomial_curve,
    reconstruct,
)


def positions(samples):
    return np.array([s.position for s in samples])


def test_interval_validation():
    with pytest.raises(ValidationError):
        AngleInterval(1.0, 1.0)
    with pytest.raises(ValidationError):
        AngleInterval(2.0, 1.0)
    with pytest.raises(ValidationError):
        AngleInterval(0.0, 1.0, n_samples=1)
    iv = AngleInterval(0.0, 2.0, 5)
    assert iv.length == 2.0
    assert iv.contains(2.0) and not iv.contains(2.1)
    assert np.allclose(iv.grid(), [0.0, 0.5, 1.0, 1.5, 2.0])


def test_circle_reconstruction_closed_form():
    samples = reconstruct(circle(1.0), AngleInterval(0.0, 2 * math.pi, 257))
    t = np.array([s.theta for s in samples])
    pts = positions(samples)
    assert np.max(np.abs(pts[:, 0] - np.sin(t))) < 1e-10
    assert np.max(np.abs(pts[:, 1] - (1.0 - np.cos(t)))) < 1e-10
    arcs = np.array([s.arclength for s in samples])
    assert np.max(np.abs(arcs - t)) < 1e-10


def test_cycloid_reconstruction_closed_form():
    samples = reconstruct(cycloid(1.0), AngleInterval(0.0, math.pi, 129))
    t = np.array([s.theta for s in samples])
    pts = positions(samples)
    assert np.max(np.abs(pts[:, 0] - np.sin(t) ** 2 / 2)) < 1e-12
    assert np.max(np.abs(pts[:, 1] - (t / 2 - np.sin(2 * t) / 4))) < 1e-12
    arcs = np.array([s.arclength for s in samples])
    assert np.max(np.abs(arcs - (1.0 - np.cos(t)))) < 1e-12


def test_log_spiral_closed_form():
    # R = e^theta: x = (e^t/2)(cos t + sin t) - 1/2, y = (e^t/2)(sin t - cos t) + 1/2
    samples = reconstruct(log_spiral(1.0, 1.0), AngleInterval(0.0, 1.0, 65))
    t = np.array([s.theta for s in samples])
    pts = positions(samples)
    ex = np.exp(t) / 2
    assert np.max(np.abs(pts[:, 0] - (ex * (np.cos(t) + np.sin(t)) - 0.5))) < 1e-12
    assert np.max(np.abs(pts[:, 1] - (ex * (np.sin(t) - np.cos(t)) + 0.5))) < 1e-12
    assert abs(pts[-1, 0] - 1.3780246135473637742) < 1e-12
    assert abs(pts[-1, 1] - 0.90933067363147861703) < 1e-12


def test_anchor_and_frame_rotation():
    plain = reconstruct(circle(1.0), AngleInterval(0.0, 1.0, 17))
    moved = reconstruct(circle(1.0), AngleInterval(0.0, 1.0, 17), anchor=(2.0, -1.0))
    delta = positions(moved) - positions(plain)
    assert np.max(np.abs(delta - np.array([2.0, -1.0]))) < 1e-12

    quarter = reconstruct(
        circle(1.0), AngleInterval(0.0, 1.0, 17), frame_rotation=math.pi / 2
    )
    rot = np.array([[0.0, -1.0], [1.0, 0.0]])
    assert np.max(np.abs(positions(quarter) - positions(plain) @ rot.T)) < 1e-10


def test_tangents_and_normals_are_orthonormal():
    samples = reconstruct(cycloid(), AngleInterval(0.1, 3.0, 33))
    for s in samples:
        assert abs(np.dot(s.tangent, s.tangent) - 1.0) < 1e-14
        assert abs(np.dot(s.tangent, s.normal)) < 1e-14
        cross = s.tangent[0] * s.normal[1] - s.tangent[1] * s.normal[0]
        assert abs(cross - 1.0) < 1e-14


def test_frenet_residual_small_on_smooth_arc():
    samples = reconstruct(log_spiral(1.0, 0.3), AngleInterval(0.0, 2.0, 513))
    assert frenet_residual(samples) < 1e-4


def test_frenet_residual_rejects_degenerate_input():
    samples = reconstruct(circle(), AngleInterval(0.0, 1.0, 17))
    with pytest.raises(DegenerateSamplingError):
        frenet_residual(samples[:2])


def test_classify_zeros_cycloid():
    curve = cycloid(1.0, domain=AngleInterval(-0.5, 3 * math.pi + 0.5, 257))
    zeros = classify_zeros(curve)
    cusps = zeros["cusps"]
    assert len(cusps) == 4
    for got, want in zip(cusps, [0.0, math.pi, 2 * math.pi, 3 * math.pi]):
        assert abs(got - want) < 1e-9
    assert zeros["flat_points"] == []


def test_classify_zeros_touching_zero_is_flat():
    curve = InclinationCurve(
        radius_fn=lambda t: np.asarray(t, dtype=float) ** 2,
        domain=AngleInterval(-1.0, 1.0, 41),
        label="touch",
    )
    zeros = classify_zeros(curve)
    assert zeros["cusps"] == []
    assert zeros["flat_points"] == [0.0]


def test_endpoint_zeros_are_not_cusps():
    curve = cycloid(1.0, domain=AngleInterval(0.0, math.pi, 65))
    assert find_cusps(curve) == []


def test_pole_guard_clips_and_blocks():
    curve = InclinationCurve(
        radius_fn=lambda t: 1.0 / np.asarray(t, dtype=float),
        domain=AngleInterval(0.0, 1.0, 33),
        label="pole",
        poles=(0.0,),
    )
    samples = reconstruct(curve)
    assert samples[0].theta >= 1e-6
    spanning = InclinationCurve(
        radius_fn=lambda t: 1.0 / np.asarray(t, dtype=float),
        domain=AngleInterval(-1.0, 1.0, 33),
        label="pole",
        poles=(0.0,),
    )
    with pytest.raises(DomainError, match="pole at theta = 0"):
        reconstruct(spanning)


def test_reconstruct_rejects_interval_outside_domain():
    with pytest.raises(DomainError):
        reconstruct(cycloid(), AngleInterval(0.0, 100.0, 17))


def test_reconstruct_accepts_explicit_grid():
    grid = np.array([0.0, 0.3, 1.1, 2.0])
    samples = reconstruct(circle(), grid)
    assert [s.theta for s in samples] == list(grid)
    with pytest.raises(ValidationError):
        reconstruct(circle(), np.array([0.0, 0.5, 0.5, 1.0]))


def test_finite_difference_derivative_fallback():
    bare = InclinationCurve(
        radius_fn=lambda t: np.sin(np.asarray(t, dtype=float)),
        domain=AngleInterval(0.0, math.pi, 65),
        label="fd",
    )
    t = np.linspace(0.3, 2.8, 11)
    assert np.max(np.abs(bare.radius_prime(t) - np.cos(t))) < 1e-9


def test_constructor_validation():
    with pytest.raises(ValidationError):
        cycloid(0.0)
    with pytest.raises(ValidationError):
        log_spiral(0.0)
    with pytest.raises(ValidationError):
        polynomial_curve([])
    with pytest.raises(ValidationError):
        polynomial_curve([0.0, 0.0])
