"""Natural parameters: metric gauges, the invariant constant, resampling."""
import numpy as np
import pytest

from wsurf import (GridSpec, SurfaceGrid, named_surface, fundamental_forms,
                   curvature_field, NaturalGauge, NuField, natural_metric,
                   naturality_check, nu_from_curvatures, fit_gauge,
                   reparameterize_to_natural, natural_pde_residual,
                   geodesic_curvatures)
from wsurf.errors import DomainError, FitError, MonotonicityError
from wsurf.pairs import minimal_pair, cmc_pair


def catenoid_exact(n=81):
    u = np.linspace(1.0, 2.0, n)
    U = u[:, None] * np.ones((1, n))
    E = np.cosh(U) ** 2
    nu1 = 1.0 / np.cosh(U) ** 2
    return E, E.copy(), nu1, -nu1, U


def test_invariant_constant_analytic_catenoid():
    E, G, nu1, nu2, _ = catenoid_exact()
    res, defect, cstar = naturality_check(E, G, nu1, nu2)
    # sqrt(EG)(nu1 - nu2) = cosh^2 * 2 sech^2 = 2 exactly
    assert abs(cstar - 2.0) < 1e-12
    assert defect < 1e-12
    assert res.values.shape == E.shape


def test_invariant_constant_cylinder():
    ones = np.ones((21, 21))
    _, defect, cstar = naturality_check(ones, ones, ones, 0.0 * ones)
    assert cstar == 1.0
    assert defect == 0.0


def test_orientation_guard():
    z = np.ones((9, 9))
    with pytest.raises(DomainError):
        naturality_check(z, z, z, z)   # nu1 == nu2 -> constant is zero


def test_invariant_constant_discrete_catenoid():
    g = named_surface("catenoid", spec=GridSpec(81, 81, 1.0, 0.0, 0.0125, 0.0125))
    forms, _ = fundamental_forms(g)
    curv = curvature_field(forms)
    _, defect, cstar = naturality_check(forms.E, forms.G, curv.nu1, curv.nu2)
    assert abs(cstar - 2.0) < 1e-3
    assert defect < 5e-4


def test_natural_metric_minimal_pair():
    pair = minimal_pair((0.01, 1.0))
    gauge = NaturalGauge(a=2.0, b=0.5, nu0=0.2)
    nu = np.linspace(0.05, 0.8, 9)
    E, G = natural_metric(pair, gauge, nu)
    # exp(-2 If) = nu0/nu for this pair
    assert np.allclose(E, (0.2 / nu) / 4.0)
    assert np.allclose(G, (0.2 / nu) * 4.0)


def test_gauge_and_field_validation():
    with pytest.raises(ValueError):
        NaturalGauge(a=0.0, b=1.0, nu0=0.5)
    with pytest.raises(ValueError):
        NuField(values=np.ones((3, 9)), du=0.1, dv=0.1)
    with pytest.raises(ValueError):
        NuField(values=np.ones((9, 9)), du=0.0, dv=0.1)


def test_stationary_nodes():
    x = np.linspace(-1.0, 1.0, 21)
    f = NuField(values=(x[:, None] ** 2 + x[None, :] ** 2) + 1.0, du=0.1, dv=0.1)
    assert (10, 10) in f.stationary_nodes(tol=1e-12)


def test_nu_recovery_on_catenoid():
    g = named_surface("catenoid", spec=GridSpec(81, 81, 1.0, 0.0, 0.0125, 0.0125))
    forms, _ = fundamental_forms(g)
    curv = curvature_field(forms)
    pair = minimal_pair((1e-3, 0.9))
    nu = nu_from_curvatures(pair, curv)
    _, _, _, _, U = catenoid_exact()
    assert np.max(np.abs(nu.values - 1.0 / np.cosh(U) ** 2)) < 5e-4


def test_nu_recovery_rejects_wrong_pair():
    g = named_surface("catenoid", spec=GridSpec(81, 81, 1.0, 0.0, 0.0125, 0.0125))
    forms, _ = fundamental_forms(g)
    curv = curvature_field(forms)
    with pytest.raises(FitError):
        # nu2 is in range of g but nu1 = f(nu) fails: not a CMC surface
        nu_from_curvatures(cmc_pair(0.5, (-0.9, 0.4)), curv)


def test_fit_gauge_roundtrip():
    pair = minimal_pair((0.01, 1.0))
    gauge = NaturalGauge(a=1.3, b=0.7, nu0=0.3)
    u = np.linspace(0.0, 1.0, 21)
    nu = 0.3 + 0.1 * np.sin(u[:, None] + 0.5 * u[None, :])
    E, G = natural_metric(pair, gauge, nu)
    fitted, defect = fit_gauge(pair, NuField(nu, du=0.05, dv=0.05), E, G, nu0=0.3)
    assert abs(fitted.a - 1.3) < 1e-12
    assert abs(fitted.b - 0.7) < 1e-12
    assert defect < 1e-12
    # fitted gauge reproduces the measured metric
    E2, G2 = natural_metric(pair, fitted, nu)
    assert np.max(np.abs(E2 - E)) < 1e-12
    assert np.max(np.abs(G2 - G)) < 1e-12


def test_reparameterize_stretched_catenoid():
    # cubic stretch in u destroys naturality; resampling restores it
    n = 81
    up = np.linspace(1.0, 2.0 ** (1.0 / 3.0), n) ** 3
    v = np.linspace(0.0, 0.8, 33)
    U, V = np.meshgrid(up, v, indexing="ij")
    pts = np.stack([np.cosh(U) * np.cos(V), np.cosh(U) * np.sin(V), U], axis=-1)
    du = up[1] - up[0]   # only nominal; columns are non-uniform in u
    grid = SurfaceGrid(GridSpec(n, 33, up[0], 0.0, du, v[1] - v[0]), pts)

    pair = minimal_pair((1e-3, 10.0))
    new_grid, gauge, report = reparameterize_to_natural(grid, pair)
    assert report["defect_before"] > 0.1

    forms, _ = fundamental_forms(new_grid)
    curv = curvature_field(forms, tol_principal=1e-4)
    _, defect_after, _ = naturality_check(forms.E, forms.G, curv.nu1, curv.nu2)
    assert defect_after < 1e-4
    assert gauge.a == 1.0 and gauge.b == 1.0
    assert report["nu_range"][0] > 0.0


def test_reparameterize_rejects_bad_gauge():
    g = named_surface("catenoid", spec=GridSpec(41, 41, 1.0, 0.0, 0.025, 0.025))
    with pytest.raises(MonotonicityError):
        reparameterize_to_natural(g, minimal_pair((1e-3, 0.9)), a=-1.0)


def test_pde_residual_constant_cmc_field():
    pair = cmc_pair(0.5)
    gauge = NaturalGauge(a=1.0, b=1.0, nu0=0.0)
    field = NuField(values=np.zeros((33, 33)), du=0.02, dv=0.02)
    res = natural_pde_residual(pair, gauge, field)
    assert res.max_abs == 0.0


def test_pde_residual_catenoid_field():
    h, n = 0.02, 51
    U = 1.0 + h * np.arange(n)[:, None] * np.ones((1, n))
    nu = 1.0 / np.cosh(U) ** 2
    nu0 = 0.5 * (nu.min() + nu.max())
    gauge = NaturalGauge(a=np.sqrt(nu0), b=np.sqrt(nu0), nu0=nu0)
    res = natural_pde_residual(minimal_pair((1e-3, 1.0)), gauge,
                               NuField(values=nu, du=h, dv=h))
    assert res.max_abs < 6e-5


def test_geodesic_curvatures_match_metric_derivatives():
    h, n = 0.01, 121
    idx = np.arange(n)
    U = 1.0 + h * idx[:, None] + 0.3 * h * idx[None, :]
    nu = 1.0 / np.cosh(U) ** 2
    nu0 = 0.5 * (nu.min() + nu.max())
    pair = minimal_pair((1e-3, 1.0))
    gauge = NaturalGauge(a=np.sqrt(nu0), b=np.sqrt(nu0), nu0=nu0)
    g1, g2 = geodesic_curvatures(pair, gauge, NuField(values=nu, du=h, dv=h))

    E, G = natural_metric(pair, gauge, nu)
    Ev = np.gradient(E, h, axis=1)
    Gu = np.gradient(G, h, axis=0)
    ref1 = -Ev / (2.0 * E * np.sqrt(G))
    ref2 = Gu / (2.0 * G * np.sqrt(E))
    core = (slice(3, -3), slice(3, -3))
    assert np.max(np.abs(g1 - ref1)[core]) < 1e-5
    assert np.max(np.abs(g2 - ref2)[core]) < 1e-4
