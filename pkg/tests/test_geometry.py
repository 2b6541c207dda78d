"""Volumes, samplers, charts, and latitude laws."""

import math

import numpy as np
import pytest
from scipy.integrate import quad

from rpenergy import rng
from rpenergy.errors import PoleError
from rpenergy.spherical_geometry import (
    GrassmannPlane,
    SpherePoint,
    TangentFrame,
    band_volume,
    canonical_lift,
    chart_basis,
    cos_power_integral,
    fermi_split,
    projective_volume,
    random_isometry_batch,
    sample_equator_batch,
    sample_grassmann,
    sample_grassmann_batch,
    sample_latitude,
    sample_uniform_sphere,
    sample_uniform_sphere_batch,
    sample_unit_tangent,
    sample_unit_tangent_batch,
    sphere_volume,
    stereographic_forward,
    stereographic_inverse,
    tangent_frame,
)


def test_sphere_volume_closed_forms():
    assert sphere_volume(0) == 2.0
    assert sphere_volume(1) == 2.0 * math.pi
    assert abs(sphere_volume(2) - 4.0 * math.pi) < 1e-12
    assert abs(sphere_volume(3) - 2.0 * math.pi ** 2) < 1e-12
    assert abs(sphere_volume(4) - 8.0 * math.pi ** 2 / 3.0) < 1e-12
    assert abs(sphere_volume(5) - math.pi ** 3) < 1e-12
    assert abs(projective_volume(2) - 2.0 * math.pi) < 1e-12
    with pytest.raises(ValueError):
        sphere_volume(-1)


def test_sphere_point_validation():
    SpherePoint(np.array([0.6, 0.8]))
    with pytest.raises(ValueError):
        SpherePoint(np.array([0.6, 0.9]))


def test_tangent_frame_validation():
    x = SpherePoint(np.array([0.0, 0.0, 1.0]))
    TangentFrame(base=x, vectors=np.eye(3)[:2])
    with pytest.raises(ValueError):
        TangentFrame(base=x, vectors=np.array([[1.0, 0.0, 0.5], [0.0, 1.0, 0.0]]))


def test_uniform_sphere_sampler_moments():
    x = sample_uniform_sphere_batch(3, 0, 0, 200_000)
    np.testing.assert_allclose(np.linalg.norm(x, axis=1), 1.0, atol=1e-12)
    assert np.max(np.abs(x.mean(axis=0))) < 0.01
    # coordinate second moment is 1/(n+1)
    np.testing.assert_allclose((x ** 2).mean(axis=0), 0.25, atol=0.01)


def test_single_sample_matches_batch():
    batch = sample_uniform_sphere_batch(5, 9, 0, 10)
    for i in (0, 3, 9):
        np.testing.assert_array_equal(sample_uniform_sphere(5, 9, i).coords, batch[i])
    xb, ub = sample_unit_tangent_batch(3, 9, 0, 10)
    s = sample_unit_tangent(3, 9, 4)
    np.testing.assert_array_equal(s.base.coords, xb[4])
    np.testing.assert_array_equal(s.direction, ub[4])


def test_unit_tangent_sampler_geometry():
    x, u = sample_unit_tangent_batch(4, 1, 0, 50_000)
    np.testing.assert_allclose(np.einsum("ij,ij->i", x, u), 0.0, atol=1e-12)
    np.testing.assert_allclose(np.einsum("ij,ij->i", u, u), 1.0, atol=1e-12)
    # directions are uniform on the fiber: mean projection on any fixed axis
    assert np.max(np.abs(u.mean(axis=0))) < 0.01


def test_grassmann_sampler_frames_and_invariance():
    frames = sample_grassmann_batch(4, 2, 3, 0, 20_000)
    assert frames.shape == (20_000, 3, 5)
    gram = np.einsum("mik,mjk->mij", frames, frames)
    np.testing.assert_allclose(gram, np.broadcast_to(np.eye(3), gram.shape),
                               atol=1e-10)
    # projection of a fixed direction onto a random plane has mean (k+1)/(n+1)
    e0 = np.zeros(5)
    e0[0] = 1.0
    proj = np.einsum("mik,k->mi", frames, e0)
    mass = (proj ** 2).sum(axis=1)
    assert abs(mass.mean() - 3.0 / 5.0) < 0.01
    plane = sample_grassmann(4, 2, 3, 17)
    assert isinstance(plane, GrassmannPlane)
    np.testing.assert_array_equal(plane.frame, frames[17])


def test_random_isometry_batch_orthogonal():
    mats = random_isometry_batch(3, 5, 0, 2000)
    prod = np.einsum("mij,mkj->mik", mats, mats)
    np.testing.assert_allclose(prod, np.broadcast_to(np.eye(4), prod.shape),
                               atol=1e-12)
    # Haar: the first column is uniform on the sphere
    col = mats[:, :, 0]
    assert np.max(np.abs(col.mean(axis=0))) < 0.1


def test_tangent_frame_construction():
    x = sample_uniform_sphere(6, 2, 0)
    fr = tangent_frame(x)
    assert fr.vectors.shape == (6, 7)


def test_canonical_lift_rules():
    pole = np.array([0.0, 0.0, 1.0])
    x = np.array([0.3, 0.4, -0.5])
    x = x / np.linalg.norm(x)
    lifted = canonical_lift(x, pole)
    np.testing.assert_allclose(lifted, -x, atol=1e-15)
    np.testing.assert_allclose(canonical_lift(-x, pole), -x, atol=1e-15)
    # equator tie: first nonzero coordinate becomes positive
    eq = np.array([-0.6, 0.8, 0.0])
    np.testing.assert_allclose(canonical_lift(eq, pole), -eq, atol=1e-15)
    batch = canonical_lift(np.stack([x, -x, eq]), pole)
    np.testing.assert_allclose(batch, np.stack([-x, -x, -eq]), atol=1e-15)


def test_stereographic_roundtrip():
    pole = np.array([0.0, 0.0, 0.0, 1.0])
    x = sample_uniform_sphere_batch(3, 4, 0, 500)
    keep = x @ pole > -0.99
    xi = stereographic_forward(x[keep], pole)
    back = stereographic_inverse(xi, pole)
    np.testing.assert_allclose(back, x[keep], atol=1e-10)
    with pytest.raises(PoleError):
        stereographic_forward(-pole, pole)


def test_stereographic_scale_convention():
    pole = np.array([0.0, 0.0, 1.0])
    np.testing.assert_allclose(stereographic_forward(pole, pole), 0.0, atol=1e-15)
    equator = np.array([1.0, 0.0, 0.0])
    assert abs(np.linalg.norm(stereographic_forward(equator, pole)) - 1.0) < 1e-12
    basis = chart_basis(pole)
    np.testing.assert_allclose(basis @ pole, 0.0, atol=1e-15)


def test_fermi_split_contract():
    pole = np.array([0.0, 0.0, 0.0, 1.0])
    x = np.abs(sample_uniform_sphere_batch(3, 6, 0, 300))
    r, foot = fermi_split(x, pole)
    assert np.all((0.0 <= r) & (r <= math.pi / 2.0))
    rebuilt = np.cos(r)[:, None] * foot + np.sin(r)[:, None] * pole
    np.testing.assert_allclose(rebuilt, x, atol=1e-12)
    with pytest.raises(PoleError):
        fermi_split(pole, pole)


def test_cos_power_integral_against_quadrature():
    for m in range(0, 9):
        for r_lo, r_hi in [(0.0, math.pi / 2.0), (0.2, 1.1), (0.0, 0.7)]:
            ref = quad(lambda r: math.cos(r) ** m, r_lo, r_hi)[0]
            assert abs(cos_power_integral(m, r_hi, r_lo) - ref) < 1e-10
    with pytest.raises(ValueError):
        cos_power_integral(-1)
    with pytest.raises(ValueError):
        cos_power_integral(2, 0.1, 0.5)


def test_band_volume_full_hemisphere():
    for n in (2, 3, 4):
        assert abs(band_volume(n, 0.0, math.pi / 2.0) - sphere_volume(n) / 2.0) < 1e-12


def test_latitude_sampler_law():
    # empirical CDF against the closed-form law, full and restricted ranges
    m, r_lo, r_hi = 2, 0.3, 1.2
    r = sample_latitude(m, 11, rng.TAG_PROBE, 0, 100_000, r_lo, r_hi)
    assert np.all((r_lo <= r) & (r <= r_hi))
    total = cos_power_integral(m, r_hi, r_lo)
    for cut in (0.5, 0.8, 1.0):
        expected = cos_power_integral(m, cut, r_lo) / total
        assert abs((r <= cut).mean() - expected) < 0.01


def test_equator_sampler():
    v = sample_equator_batch(4, 3, rng.TAG_EQUATOR, 0, 10_000)
    assert v.shape == (10_000, 5)
    np.testing.assert_allclose(v[:, -1], 0.0, atol=1e-15)
    np.testing.assert_allclose(np.linalg.norm(v, axis=1), 1.0, atol=1e-12)
