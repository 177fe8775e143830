"""Ray-level checks: reflection, envelopes, feasibility flags."""

import math

import numpy as np
import pytest

from caustics.caustic import TiltField
from caustics.errors import DegenerateSamplingError, ValidationError
from caustics.inclination import AngleInterval, circle, reconstruct
from caustics.oracle import (
    Ray,
    RayFamily,
    envelope_numeric,
    hausdorff_distance,
    occlusion_check,
    rays_from_tilt,
    reflect_horizontal,
    verticality_check,
)


def circle_points(lo, hi, n):
    samples = reconstruct(circle(1.0), AngleInterval(lo, hi, n))
    thetas = np.array([s.theta for s in samples])
    return np.array([s.position for s in samples]), thetas


def tangent_family(n):
    thetas = np.linspace(0.01, 2 * math.pi, n)
    rays = tuple(
        Ray(
            base=np.array([math.cos(t), math.sin(t)]),
            direction=np.array([-math.sin(t), math.cos(t)]),
        )
        for t in thetas
    )
    return RayFamily(rays=rays, source_thetas=thetas)


def test_ray_requires_unit_direction():
    with pytest.raises(ValidationError):
        Ray(base=np.zeros(2), direction=np.array([1.0, 1.0]))
    ray = Ray(base=np.array([1.0, 2.0]), direction=np.array([0.0, 1.0]))
    assert np.allclose(ray.point_at(3.0), [1.0, 5.0])


def test_family_requires_increasing_thetas():
    rays = tuple(
        Ray(base=np.array([float(i), 0.0]), direction=np.array([0.0, 1.0])) for i in range(3)
    )
    with pytest.raises(ValidationError):
        RayFamily(rays=rays, source_thetas=np.array([0.0, 0.5, 0.5]))
    with pytest.raises(ValidationError):
        RayFamily(rays=rays, source_thetas=np.array([0.0, 0.5]))


def test_evolute_rays_of_circle_hit_center():
    family = rays_from_tilt(circle(1.0), TiltField.evolute(), AngleInterval(0.0, 2 * math.pi, 65))
    for ray in family.rays:
        hit = ray.point_at(1.0)
        assert np.linalg.norm(hit - np.array([0.0, 1.0])) < 1e-9


def test_reflection_of_semicircle_doubles_angle():
    pts, thetas = circle_points(0.01, math.pi - 0.01, 4001)
    family = reflect_horizontal(pts, thetas)
    dirs = family.directions()
    want = np.stack([np.cos(2 * thetas), np.sin(2 * thetas)], axis=1)
    err = np.linalg.norm(dirs[1:-1] - want[1:-1], axis=1)
    assert np.max(err) < 1e-6


def test_reflection_rejects_degenerate_polylines():
    dup = np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 0.0]])
    with pytest.raises(DegenerateSamplingError):
        reflect_horizontal(dup)
    reversal = np.array([[0.0, 0.0], [1.0, 0.0], [0.5, 0.0]])
    with pytest.raises(DegenerateSamplingError):
        reflect_horizontal(reversal)


def test_envelope_of_tangent_lines_is_the_circle():
    envelope = envelope_numeric(tangent_family(2000))
    radii = np.linalg.norm(envelope.points, axis=1)
    assert envelope.gap_indices == ()
    assert np.max(np.abs(radii - 1.0)) < 5e-6


def test_envelope_error_at_least_halves_with_step():
    fine = envelope_numeric(tangent_family(2000))
    coarse = envelope_numeric(tangent_family(1000))
    err_fine = np.max(np.abs(np.linalg.norm(fine.points, axis=1) - 1.0))
    err_coarse = np.max(np.abs(np.linalg.norm(coarse.points, axis=1) - 1.0))
    assert err_fine <= 0.5 * err_coarse


def test_envelope_needs_three_rays_and_flags_parallels():
    rays = tuple(
        Ray(base=np.array([0.0, float(i)]), direction=np.array([1.0, 0.0])) for i in range(4)
    )
    family = RayFamily(rays=rays, source_thetas=np.arange(4.0))
    envelope = envelope_numeric(family)
    assert len(envelope.gap_indices) == 3
    assert np.all(np.isnan(envelope.points))
    with pytest.raises(ValidationError):
        envelope_numeric(RayFamily(rays=rays[:2], source_thetas=np.arange(2.0)))


def test_hausdorff_of_offset_segments():
    first = np.array([[0.0, 0.0], [1.0, 0.0]])
    second = np.array([[0.0, 0.3], [1.0, 0.3]])
    assert abs(hausdorff_distance(first, second) - 0.3) < 1e-12


def test_hausdorff_with_gaps_and_exclusions():
    first = np.array([[0.0, 0.0], [1.0, 0.0], [np.nan, np.nan], [0.0, 1.0], [1.0, 1.0]])
    second = np.array([[0.0, 0.0], [1.0, 0.0]])
    assert abs(hausdorff_distance(first, second) - 1.0) < 1e-12
    # excising the offset branch leaves two identical segments
    d = hausdorff_distance(first, second, exclusions=np.array([[0.5, 1.0]]), exclusion_radius=0.6)
    assert d < 1e-12
    with pytest.raises(ValidationError):
        hausdorff_distance(first, second, exclusions=np.array([[0.5, 0.5]]), exclusion_radius=10.0)


def test_verticality_flags():
    arc, _ = circle_points(0.0, math.pi, 101)
    assert verticality_check(arc).is_vertical
    overhang, _ = circle_points(0.0, 1.5 * math.pi, 151)
    verdict = verticality_check(overhang)
    assert not verdict.is_vertical
    assert verdict.first_violation is not None
    flat = np.array([[0.0, 0.0], [1.0, 0.0], [2.0, 1.0]])
    assert not verticality_check(flat).is_vertical


def test_occlusion_flags():
    arc, _ = circle_points(0.0, math.pi, 101)
    clear = occlusion_check(arc)
    assert not clear.has_occlusion
    assert clear.blocked_fraction == 0.0
    overhang, _ = circle_points(0.0, 1.5 * math.pi, 301)
    blocked = occlusion_check(overhang)
    assert blocked.has_occlusion
    assert 0.0 < blocked.blocked_fraction < 1.0
    assert len(blocked.blocked_indices) > 0
