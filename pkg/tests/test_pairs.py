"""Weingarten pairs: admissibility, derivatives, associated integrals."""
import numpy as np
import pytest

from wsurf.errors import DomainError
from wsurf.pairs import (WeingartenPair, minimal_pair, cmc_pair, linear_pair,
                         fractional_pair, table_pair, pair_from_spec,
                         pair_to_spec)


def test_minimal_pair_values():
    p = minimal_pair()
    nu = np.array([0.5, 1.0, 2.0])
    assert np.array_equal(p.f(nu), nu)
    assert np.array_equal(p.g(nu), -nu)
    assert np.array_equal(p.separation(nu), 2 * nu)
    assert np.allclose(p.If(nu, 1.0), 0.5 * np.log(nu))
    assert np.allclose(p.Ig(nu, 1.0), 0.5 * np.log(nu))


def test_cmc_pair_values():
    p = cmc_pair(0.5)
    assert p.interval == (-0.5, 0.49)
    nu = np.linspace(-0.4, 0.4, 7)
    assert np.allclose(p.f(nu) + p.g(nu), 1.0)   # constant mean curvature
    assert np.allclose(p.If(nu, 0.0), 0.5 * np.log((0.5 - nu) / 0.5))


def test_linear_pair_closed_form_matches_quadrature():
    A, B, lo, hi = 2.0, 0.5, 0.1, 2.0
    p = linear_pair(A, B, (lo, hi))
    # same functions without closed-form integrals -> adaptive quadrature
    q = WeingartenPair(f=lambda nu: A * np.asarray(nu, float) + B,
                       g=lambda nu: np.asarray(nu, float),
                       interval=(lo, hi))
    nu = np.linspace(0.2, 1.9, 9)
    assert np.max(np.abs(p.If(nu, 1.0) - q.If(nu, 1.0))) < 1e-8
    assert np.max(np.abs(p.Ig(nu, 1.0) - q.Ig(nu, 1.0))) < 1e-8


def test_linear_pair_unit_slope_branch():
    p = linear_pair(1.0, 0.25, (0.1, 1.0))
    nu = np.array([0.3, 0.7])
    assert np.allclose(p.If(nu, 0.5), (nu - 0.5) / 0.25)
    assert np.allclose(p.Ig(nu, 0.5), -(nu - 0.5) / 0.25)


def test_fractional_pair_derivatives():
    A, B, C, D = 1.0, 2.0, 1.0, 3.0
    p = fractional_pair(A, B, C, D, (0.2, 1.5))
    nu = np.linspace(0.2, 1.5, 11)
    assert np.allclose(p.f(nu), (nu + 2.0) / (nu + 3.0))
    assert np.allclose(p.df(nu), (A * D - B * C) / (C * nu + D) ** 2)
    assert np.allclose(p.d2f(nu), -2.0 * C * (A * D - B * C) / (C * nu + D) ** 3)


def test_fractional_pair_rejects_constant_map():
    with pytest.raises(DomainError):
        fractional_pair(2.0, 4.0, 1.0, 2.0, (0.1, 1.0))  # f == 2 everywhere


def test_domain_is_enforced():
    p = minimal_pair((0.5, 2.0))
    with pytest.raises(DomainError):
        p.f(0.4)
    with pytest.raises(DomainError):
        p.If(np.array([1.0, 2.5]), 1.0)


def test_umbilic_inside_interval_is_rejected():
    # f(nu) = (nu + 1)/nu meets g(nu) = nu at the golden ratio 1.618...
    with pytest.raises(DomainError):
        fractional_pair(1.0, 1.0, 1.0, 0.0, (0.5, 2.0))
    fractional_pair(1.0, 1.0, 1.0, 0.0, (0.5, 1.5))  # stays clear of it


def test_separation_sign_change_between_samples():
    with pytest.raises(DomainError):
        WeingartenPair(f=lambda nu: np.asarray(nu, float),
                       g=lambda nu: 2.0 * np.asarray(nu, float),
                       interval=(-1.0, 0.7))


def test_slope_sign_change_is_rejected():
    # f - g = nu^2 - nu + 5 never vanishes, but f' flips sign at nu = 0
    with pytest.raises(DomainError):
        WeingartenPair(f=lambda nu: np.asarray(nu, float) ** 2,
                       g=lambda nu: np.asarray(nu, float) - 5.0,
                       interval=(-0.5, 0.7))


def test_synthesized_derivatives():
    p = WeingartenPair(f=np.sin, g=lambda nu: -np.cos(np.asarray(nu, float)),
                       interval=(0.1, 1.2))
    nu = np.linspace(0.15, 1.1, 13)
    assert np.max(np.abs(p.df(nu) - np.cos(nu))) < 1e-8
    assert np.max(np.abs(p.d2f(nu) + np.sin(nu))) < 1e-4
    # endpoint evaluation survives the clamp used by the stencils
    assert abs(p.df(0.1) - np.cos(0.1)) < 1e-4


def test_table_pair_reproduces_cubic_data():
    nu = np.linspace(0.2, 1.8, 9)
    p = table_pair(nu, nu ** 3 + 1.0, nu - 2.0)
    x = np.linspace(0.25, 1.75, 21)
    assert np.max(np.abs(p.f(x) - (x ** 3 + 1.0))) < 1e-12
    assert np.max(np.abs(p.df(x) - 3.0 * x ** 2)) < 1e-12


def test_table_pair_validation():
    with pytest.raises(DomainError):
        table_pair([0.0, 1.0, 2.0], [1, 2, 3], [0, 0, 0])
    with pytest.raises(DomainError):
        table_pair([0.0, 1.0, 1.0, 2.0], [1, 2, 3, 4], [0, 0, 0, 0])


def test_spec_roundtrip():
    pairs = [minimal_pair((0.2, 3.0)),
             cmc_pair(0.25, (-0.6, 0.2)),
             linear_pair(2.0, 0.5, (0.1, 2.0)),
             fractional_pair(1.0, 1.0, 1.0, 0.0, (0.5, 1.5))]
    for p in pairs:
        q = pair_from_spec(pair_to_spec(p))
        assert q.kind == p.kind
        assert q.interval == p.interval
        nu = np.linspace(p.interval[0] + 0.01, p.interval[1] - 0.01, 5)
        assert np.allclose(q.f(nu), p.f(nu))
        assert np.allclose(q.g(nu), p.g(nu))


def test_table_spec_roundtrip():
    nu = np.linspace(0.2, 1.8, 9)
    p = table_pair(nu, nu ** 3 + 1.0, nu - 2.0)
    q = pair_from_spec(pair_to_spec(p))
    x = np.linspace(0.3, 1.7, 11)
    assert np.allclose(q.f(x), p.f(x))


def test_bad_specs():
    with pytest.raises(DomainError):
        pair_from_spec({"kind": "moebius"})
    with pytest.raises(DomainError):
        pair_from_spec({"kind": "linear", "A": 2.0})  # B missing
    with pytest.raises(DomainError):
        pair_from_spec(["minimal"])
