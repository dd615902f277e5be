"""Offset surfaces and transport of curvatures, metrics, pairs, gauges."""
import numpy as np
import pytest

from wsurf import (GridSpec, named_surface, NaturalGauge, NuField,
                   offset_surface, offset_sign, parallel_principal_curvatures,
                   parallel_invariants, parallel_metric,
                   parallel_weingarten_pair, parallel_gauge,
                   verify_parallel_naturality, verify_pde_invariance)
from wsurf.errors import ReciprocalSingularityError, SingularOffsetError
from wsurf.pairs import WeingartenPair, minimal_pair


def unit_cylinder():
    n = 126
    return named_surface("cylinder",
                         spec=GridSpec(n, 41, 0.0, 0.0, 2 * np.pi / n, 0.05),
                         r=1.0)


def test_offset_cylinder_shrinks_radius():
    shifted, eps = offset_surface(unit_cylinder(), 0.25)
    r = np.sqrt(shifted.points[..., 0] ** 2 + shifted.points[..., 1] ** 2)
    assert eps == 1.0
    assert np.max(np.abs(r - 0.75)) < 1e-9


def test_offset_past_the_axis_flips_sign():
    shifted, eps = offset_surface(unit_cylinder(), 2.0)
    r = np.sqrt(shifted.points[..., 0] ** 2 + shifted.points[..., 1] ** 2)
    assert eps == -1.0
    assert np.max(np.abs(r - 1.0)) < 1e-9


def test_focal_offset_is_singular():
    with pytest.raises(SingularOffsetError):
        offset_surface(unit_cylinder(), 1.0)


def test_sign_change_across_patch_is_singular():
    n = 126
    g = named_surface("torus",
                      spec=GridSpec(n, n, 0.0, 0.0, 2 * np.pi / n, 2 * np.pi / n),
                      R=2.0, r=0.7)
    with pytest.raises(SingularOffsetError):
        offset_surface(g, 1.5)


def test_offset_sign_values():
    nu1 = np.array([1.2, 1.3])
    nu2 = np.array([0.1, 0.2])
    assert offset_sign(nu1, nu2, 0.25) == 1.0
    assert offset_sign(nu1, nu2, 0.9) == -1.0   # 1 - a*nu1 < 0 < 1 - a*nu2


def test_curvature_transport_roundtrip():
    rng = np.random.default_rng(5)
    nu1 = rng.uniform(0.5, 1.5, size=(7, 7))
    nu2 = rng.uniform(-1.5, -0.5, size=(7, 7))
    a = 0.3
    n1b, n2b, eps = parallel_principal_curvatures(nu1, nu2, a)
    back1, back2, _ = parallel_principal_curvatures(n1b, n2b, a, eps=eps,
                                                    direction="inverse")
    assert np.max(np.abs(back1 - nu1)) < 1e-13
    assert np.max(np.abs(back2 - nu2)) < 1e-13


def test_invariants_match_channelwise_transport():
    nu1 = np.array([0.8, 1.1, 0.9])
    nu2 = np.array([-0.4, -0.2, -0.6])
    a = 0.4
    n1b, n2b, eps = parallel_principal_curvatures(nu1, nu2, a)
    Kb, Hb, Hpb = parallel_invariants(nu1 * nu2, 0.5 * (nu1 + nu2),
                                      0.5 * (nu1 - nu2), a, eps)
    assert np.allclose(Kb, n1b * n2b)
    assert np.allclose(Hb, 0.5 * (n1b + n2b))
    assert np.allclose(Hpb, 0.5 * (n1b - n2b))
    # and back
    K, H, Hp = parallel_invariants(Kb, Hb, Hpb, a, eps, direction="inverse")
    assert np.allclose(K, nu1 * nu2)
    assert np.allclose(H, 0.5 * (nu1 + nu2))
    assert np.allclose(Hp, 0.5 * (nu1 - nu2))


def test_inverse_transport_needs_eps_and_can_hit_singularity():
    with pytest.raises(ValueError):
        parallel_principal_curvatures(np.ones(3), np.zeros(3), 0.1,
                                      direction="inverse")
    with pytest.raises(ReciprocalSingularityError):
        parallel_principal_curvatures(np.array([-2.0]), np.array([-3.0]), 0.5,
                                      eps=1.0, direction="inverse")
    with pytest.raises(ValueError):
        parallel_principal_curvatures(np.ones(3), np.zeros(3), 0.1,
                                      direction="sideways")


def test_parallel_metric_formula():
    E = np.full((5, 5), 2.0)
    G = np.full((5, 5), 3.0)
    nu1 = np.full((5, 5), 0.5)
    nu2 = np.full((5, 5), -0.5)
    Eb, Gb = parallel_metric(E, G, nu1, nu2, 0.2)
    assert np.allclose(Eb, (1 - 0.1) ** 2 * 2.0)
    assert np.allclose(Gb, (1 + 0.1) ** 2 * 3.0)


def test_parallel_pair_values_and_integrals():
    base = minimal_pair((0.1, 0.8))
    a = 0.1
    bar, eps = parallel_weingarten_pair(base, a)
    assert eps == 1.0
    assert bar.params["eps"] == 1.0
    nu = np.linspace(0.15, 0.75, 9)
    assert np.allclose(bar.f(nu), nu / (1.0 - a * nu))
    assert np.allclose(bar.g(nu), -nu / (1.0 + a * nu))
    assert np.allclose(bar.df(nu), 1.0 / (1.0 - a * nu) ** 2)

    # transported closed-form integrals against raw quadrature on (fbar, gbar)
    q = WeingartenPair(f=lambda t: np.asarray(t, float) / (1.0 - a * np.asarray(t, float)),
                       g=lambda t: -np.asarray(t, float) / (1.0 + a * np.asarray(t, float)),
                       interval=(0.1, 0.8))
    assert np.max(np.abs(bar.If(nu, 0.4) - q.If(nu, 0.4))) < 1e-8
    assert np.max(np.abs(bar.Ig(nu, 0.4) - q.Ig(nu, 0.4))) < 1e-8


def test_parallel_pair_singular_offset():
    with pytest.raises(SingularOffsetError):
        parallel_weingarten_pair(minimal_pair((0.1, 0.8)), 2.0)  # 1 - a*f hits 0


def test_parallel_gauge_values():
    pair = minimal_pair((0.1, 0.8))
    g0 = NaturalGauge(a=1.0, b=2.0, nu0=0.4)
    gb = parallel_gauge(g0, pair, 0.25)
    assert abs(gb.a - 1.0 / abs(1.0 - 0.25 * 0.4)) < 1e-15
    assert abs(gb.b - 2.0 / abs(1.0 + 0.25 * 0.4)) < 1e-15
    assert gb.nu0 == 0.4


def test_offset_of_natural_patch_stays_natural():
    u = np.linspace(0.0, 1.0, 41)
    nu = 1.0 / np.cosh(u[:, None] + 0.5) ** 2 * np.ones((1, 41))
    field = NuField(values=nu, du=0.025, dv=0.025)
    pair = minimal_pair((0.01, 0.9))
    gauge = NaturalGauge(a=1.0, b=1.0, nu0=0.25)
    _, defect, cstar = verify_parallel_naturality(pair, gauge, field, 0.25)
    assert defect < 1e-12
    assert cstar != 0.0


def test_pde_residual_transports_pointwise():
    u = np.linspace(0.0, 1.0, 41)
    nu = 0.3 + 0.1 * np.sin(u[:, None] + 0.5 * u[None, :])
    field = NuField(values=nu, du=0.025, dv=0.025)
    pair = minimal_pair((0.1, 0.8))
    gauge = NaturalGauge(a=1.0, b=1.0, nu0=0.3)
    report = verify_pde_invariance(pair, gauge, field, 0.25)
    assert report["eps"] == 1.0
    assert report["max_rel_diff"] < 1e-12
