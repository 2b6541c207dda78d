"""Differentials, densities, harmonicity diagnostics, and the map catalog."""

import dataclasses
import math

import numpy as np
import pytest

from rpenergy.errors import (
    ConformalPreconditionError,
    PoleError,
    TargetConsistencyError,
)
from rpenergy.map_model import (
    SmoothMap,
    area_density_2d,
    area_density_2d_batch,
    catalog,
    conformal_defect_2d,
    conformal_defect_2d_batch,
    conformal_residual,
    differential,
    differential_batch,
    energy_density,
    energy_density_batch,
    equator_frame,
    graph_map,
    precompose_frame,
    precompose_isometry,
    restrict_to_equator,
    singular_values_batch,
    sphere_target,
    standard_pole,
    tension_field,
    tension_field_batch,
)
from rpenergy.spherical_geometry import (
    SpherePoint,
    TangentFrame,
    random_isometry,
    sample_uniform_sphere,
    tangent_frame,
)

TWO_DOMAIN_MAPS = [
    ("identity", {}),
    ("constant", {}),
    ("retraction_to_hyperplane", {}),
    ("dilation", {"t": 2.0}),
    ("polar_warp", {}),
]


def _rotated_frame(x: SpherePoint, seed: int) -> TangentFrame:
    base = tangent_frame(x)
    d = base.vectors.shape[0]
    g = np.random.default_rng(seed).standard_normal((d, d))
    q, r = np.linalg.qr(g)
    q *= np.sign(np.diag(r))
    return TangentFrame(base=x, vectors=q @ base.vectors)


def test_identity_differential_orthonormal():
    x = sample_uniform_sphere(2, 0, 0)
    d = differential(catalog("identity", 2), x)
    sv = np.linalg.svd(d.matrix, compute_uv=False)
    np.testing.assert_allclose(sv, 1.0, atol=1e-7)


def test_constant_differential_zero():
    x = sample_uniform_sphere(2, 0, 1)
    d = differential(catalog("constant", 2), x)
    np.testing.assert_allclose(d.matrix, 0.0, atol=1e-7)


def test_dilation_differential_at_fixed_point():
    F = catalog("dilation", 2, t=2.0)
    d = differential(F, SpherePoint(standard_pole(2)))
    sv = np.linalg.svd(d.matrix, compute_uv=False)
    np.testing.assert_allclose(sv, 2.0, atol=1e-6)
    assert abs(energy_density(F, SpherePoint(standard_pole(2))) - 4.0) < 1e-6


def test_differential_columns_tangent_to_target():
    for map_id, params in [("polar_warp", {}), ("dilation", {"t": 3.0})]:
        F = catalog(map_id, 3, **params)
        x = sample_uniform_sphere(3, 1, 2)
        d = differential(F, x)
        y = F.eval(x)
        np.testing.assert_allclose(y @ d.matrix, 0.0, atol=10.0 * F.fd_step ** 2)


def test_fd_matches_analytic_pushforward():
    # every catalog map with an analytic differential agrees with central
    # differences of its own evaluator
    cases = [("identity", 3, {}), ("inclusion", 5, {"k": 3}),
             ("dilation", 3, {"t": 2.5}), ("polar_warp", 3, {}),
             ("retraction_to_hyperplane", 3, {}), ("constant", 3, {})]
    rng = np.random.default_rng(5)
    for map_id, n, params in cases:
        F = catalog(map_id, n, **params)
        assert F.push_batch is not None
        fd = dataclasses.replace(F, push_batch=None)
        x = rng.standard_normal((200, F.domain_dim + 1))
        x /= np.linalg.norm(x, axis=1, keepdims=True)
        if map_id == "retraction_to_hyperplane":
            x = x[np.abs(x[:, -1]) < 0.8]
        np.testing.assert_allclose(differential_batch(F, x),
                                   differential_batch(fd, x),
                                   atol=1e-6)


def test_graph_fd_matches_analytic():
    F = graph_map(catalog("identity", 2), 0.3)
    fd = dataclasses.replace(F, push_batch=None)
    rng = np.random.default_rng(6)
    x = rng.standard_normal((100, 3))
    x /= np.linalg.norm(x, axis=1, keepdims=True)
    np.testing.assert_allclose(differential_batch(F, x),
                               differential_batch(fd, x), atol=1e-6)


def test_energy_density_frame_independence():
    for map_id, params in [("identity", {}), ("polar_warp", {}),
                           ("dilation", {"t": 2.0})]:
        F = catalog(map_id, 3, **params)
        for i in range(5):
            x = sample_uniform_sphere(3, 2, i)
            e1 = energy_density(F, x, tangent_frame(x))
            e2 = energy_density(F, x, _rotated_frame(x, i))
            assert abs(e1 - e2) < 1e-8


def test_identity_density_is_half_dimension():
    for n in (2, 3, 5):
        F = catalog("identity", n)
        x = sample_uniform_sphere(n, 3, 0)
        assert abs(energy_density(F, x) - n / 2.0) < 1e-10


def test_graph_density_closed_form():
    r = 0.25
    F = graph_map(catalog("identity", 2), r)
    for i in range(5):
        x = sample_uniform_sphere(2, 4, i)
        assert abs(energy_density(F, x) - (1.0 + r)) < 1e-8


def test_antipodal_consistency_of_density():
    for map_id, params in [("identity", {}), ("constant", {}), ("polar_warp", {})]:
        F = catalog(map_id, 3, **params)
        assert F.descends
        rng = np.random.default_rng(7)
        x = rng.standard_normal((100, 4))
        x /= np.linalg.norm(x, axis=1, keepdims=True)
        np.testing.assert_allclose(energy_density_batch(F, x),
                                   energy_density_batch(F, -x), atol=1e-8)


def test_isometry_equivariance_of_density():
    F = catalog("polar_warp", 3)
    M = random_isometry(3, 11, 0)
    G = precompose_isometry(F, M)
    rng = np.random.default_rng(8)
    x = rng.standard_normal((100, 4))
    x /= np.linalg.norm(x, axis=1, keepdims=True)
    np.testing.assert_allclose(energy_density_batch(G, x),
                               energy_density_batch(F, x @ M.T), atol=1e-8)


def test_lemma4_pointwise_all_two_domain_maps(probes):
    x = probes(2, 10_000)
    for map_id, params in TWO_DOMAIN_MAPS:
        F = catalog(map_id, 2, **params)
        if map_id == "retraction_to_hyperplane":
            keep = np.abs(x[:, -1]) < 0.999
            slack = (energy_density_batch(F, x[keep])
                     - area_density_2d_batch(F, x[keep]))
        else:
            slack = energy_density_batch(F, x) - area_density_2d_batch(F, x)
        assert float(slack.min()) >= -1e-8, map_id
    G = graph_map(catalog("identity", 2), 0.3)
    slack = energy_density_batch(G, x) - area_density_2d_batch(G, x)
    assert float(slack.min()) >= -1e-8


def test_conformal_defect_cases(probes):
    x = probes(2, 1000)
    ident = catalog("identity", 2)
    assert float(np.abs(conformal_defect_2d_batch(ident, x)).max()) < 1e-6

    incl = catalog("inclusion", 4, k=2)
    assert float(np.abs(conformal_defect_2d_batch(incl, x)).max()) < 1e-6

    G = graph_map(ident, 0.4)
    assert float(np.abs(conformal_defect_2d_batch(G, x)).max()) < 1e-6

    warp = catalog("polar_warp", 2)
    defect = conformal_defect_2d_batch(warp, x)
    assert float(defect.min()) >= -1e-10
    assert float(defect.mean()) > 0.01


def test_rank_degenerate_point():
    # the hyperplane retraction at latitude pi/3 has singular values (2, 0)
    F = catalog("retraction_to_hyperplane", 2)
    x = SpherePoint(np.array([0.5, 0.0, math.sqrt(3.0) / 2.0]))
    sv = singular_values_batch(differential_batch(F, x.coords[None, :]))[0]
    np.testing.assert_allclose(sv, [2.0, 0.0], atol=1e-10)
    assert abs(area_density_2d(F, x)) < 1e-10
    assert abs(energy_density(F, x) - 2.0) < 1e-10
    assert abs(conformal_defect_2d(F, x) - 2.0) < 1e-10


def test_tension_of_harmonic_maps(probes):
    x3 = probes(3, 1000)
    ident = catalog("identity", 3)
    assert float(np.linalg.norm(tension_field_batch(ident, x3), axis=1).max()) < 1e-4

    x1 = probes(1, 1000)
    incl = catalog("inclusion", 2, k=1)
    assert float(np.linalg.norm(tension_field_batch(incl, x1), axis=1).max()) < 1e-4

    x2 = probes(2, 1000)
    theta = catalog("dilation", 2, t=3.0)
    assert float(np.linalg.norm(tension_field_batch(theta, x2), axis=1).max()) < 1e-4


def test_polar_warp_is_not_harmonic():
    warp = catalog("polar_warp", 2)
    x = SpherePoint(np.array([math.cos(0.5), 0.0, math.sin(0.5)]))
    assert float(np.linalg.norm(tension_field(warp, x))) > 0.01


def test_conformal_residual_cases():
    ident = catalog("identity", 3)
    x = sample_uniform_sphere(3, 13, 0)
    assert conformal_residual(ident, x) < 1e-6

    theta3 = catalog("dilation", 3, t=2.0)
    for i in range(5):
        x = sample_uniform_sphere(3, 13, i)
        assert conformal_residual(theta3, x) < 1e-3

    theta2 = catalog("dilation", 2, t=2.0)
    x2 = sample_uniform_sphere(2, 13, 0)
    assert conformal_residual(theta2, x2) < 1e-3
    assert float(np.linalg.norm(tension_field(theta2, x2))) < 1e-3

    warp = catalog("polar_warp", 3)
    probe = SpherePoint(np.array([math.cos(0.6), 0.0, 0.0, math.sin(0.6)]))
    with pytest.raises(ConformalPreconditionError):
        conformal_residual(warp, probe)


def test_eval_consistency_check():
    off = SmoothMap(domain_dim=2, target=sphere_target(3),
                    eval_batch=lambda x: 1.1 * x, name="off-manifold")
    with pytest.raises(TargetConsistencyError):
        off.eval(SpherePoint(np.array([1.0, 0.0, 0.0])))


def test_retraction_pole_error():
    F = catalog("retraction_to_hyperplane", 2)
    with pytest.raises(PoleError):
        F.eval_batch(standard_pole(2)[None, :])


def test_catalog_errors():
    with pytest.raises(ValueError):
        catalog("no-such-map", 3)
    with pytest.raises(ValueError):
        catalog("identity", 3, bogus=1)
    with pytest.raises(ValueError):
        catalog("inclusion", 3, k=9)
    with pytest.raises(ValueError):
        catalog("dilation", 3, t=-1.0)
    with pytest.raises(ValueError):
        catalog("polar_warp", 3, profile="cubic")
    with pytest.raises(ValueError):
        catalog("graph", 2, r=0.0)


def test_catalog_flags_and_aliases():
    assert catalog("identity", 3).equivariance == "antipode"
    assert catalog("constant", 3).equivariance == "invariant"
    assert catalog("inclusion", 4, k=2).equivariance == "antipode"
    assert catalog("dilation", 3, t=2.0).equivariance == "none"
    assert catalog("dilation", 3, t=1.0).equivariance == "antipode"
    assert catalog("retraction", 3).name == catalog("retraction_to_hyperplane", 3).name
    assert not catalog("dilation", 3, t=2.0).descends
    assert catalog("graph", 2, r=0.1).descends


def test_inclusion_image_is_totally_geodesic_sphere():
    F = catalog("inclusion", 4, k=2)
    x = sample_uniform_sphere(2, 14, 0)
    y = F.eval(x)
    assert y.shape == (5,)
    np.testing.assert_allclose(y[3:], 0.0, atol=1e-15)
    np.testing.assert_allclose(np.linalg.norm(y), 1.0, atol=1e-12)


def test_restrict_to_equator_and_precompose_frame():
    F = catalog("polar_warp", 3)
    Fq = restrict_to_equator(F)
    assert Fq.domain_dim == 2
    # the equator is fixed by the warp, so the restriction is the inclusion
    x = sample_uniform_sphere(2, 15, 0)
    np.testing.assert_allclose(Fq.eval(x)[:3], x.coords, atol=1e-12)

    A = equator_frame(3)
    assert A.shape == (3, 4)
    Fq2 = precompose_frame(F, A)
    np.testing.assert_allclose(Fq2.eval(x), Fq.eval(x), atol=1e-15)


def test_polar_warp_moves_latitudes():
    warp = catalog("polar_warp", 2)
    # latitude pi/4 maps to latitude (2/pi)(pi/4)^2 = pi/8
    psi = math.pi / 4.0
    x = SpherePoint(np.array([math.cos(psi), 0.0, math.sin(psi)]))
    y = warp.eval(x)
    assert abs(math.asin(y[2]) - math.pi / 8.0) < 1e-12
    # equator and poles are fixed
    eq = SpherePoint(np.array([1.0, 0.0, 0.0]))
    np.testing.assert_allclose(warp.eval(eq), eq.coords, atol=1e-12)
    pole = SpherePoint(np.array([0.0, 0.0, 1.0]))
    np.testing.assert_allclose(warp.eval(pole), pole.coords, atol=1e-12)
