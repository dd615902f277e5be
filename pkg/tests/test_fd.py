"""Difference stencils and the adaptive quadrature helpers."""
import numpy as np
import pytest

from wsurf import fd
from wsurf.quadrature import adaptive_simpson, cumulative_at
from wsurf.errors import QuadratureError


def trig_field(h, n):
    x = h * np.arange(n)[:, None] * np.ones((1, n))
    y = h * np.arange(n)[None, :] * np.ones((n, 1))
    return x, y, np.sin(x) * np.cos(y)


def test_diff1_matches_analytic_derivative():
    x, y, f = trig_field(0.025, 81)
    d = fd.diff1(f, 0.025, axis=0)
    assert np.max(np.abs(d - np.cos(x) * np.cos(y))) < 5e-4


def test_diff1_axis1():
    x, y, f = trig_field(0.025, 81)
    d = fd.diff1(f, 0.025, axis=1)
    assert np.max(np.abs(d + np.sin(x) * np.sin(y))) < 5e-4


def test_diff2_matches_analytic_derivative():
    x, y, f = trig_field(0.025, 81)
    d = fd.diff2(f, 0.025, axis=0)
    assert np.max(np.abs(d + np.sin(x) * np.cos(y))) < 1e-3


def test_mixed2_matches_analytic_derivative():
    x, y, f = trig_field(0.025, 81)
    d = fd.mixed2(f, 0.025, 0.025)
    assert np.max(np.abs(d + np.cos(x) * np.sin(y))) < 1e-3


def test_stencils_are_second_order():
    # halving h should cut the error by about 4
    errs = {}
    for h, n in ((0.05, 41), (0.025, 81)):
        x, y, f = trig_field(h, n)
        errs[h] = (
            np.max(np.abs(fd.diff1(f, h, axis=0) - np.cos(x) * np.cos(y))),
            np.max(np.abs(fd.diff2(f, h, axis=0) + np.sin(x) * np.cos(y))),
            np.max(np.abs(fd.mixed2(f, h, h) + np.cos(x) * np.sin(y))),
        )
    for coarse, fine in zip(errs[0.05], errs[0.025]):
        assert coarse / fine > 3.5


def test_interior_mask_excludes_one_ring():
    m = fd.interior_mask((6, 7))
    assert m.shape == (6, 7)
    assert int(m.sum()) == 4 * 5
    assert not m[0].any() and not m[-1].any()
    assert not m[:, 0].any() and not m[:, -1].any()


def test_adaptive_simpson_sin():
    val = adaptive_simpson(np.sin, 0.0, np.pi, tol=1e-12)
    assert abs(val - 2.0) < 1e-11


def test_adaptive_simpson_empty_interval():
    assert adaptive_simpson(np.sin, 1.0, 1.0) == 0.0


def test_adaptive_simpson_rejects_nonfinite_integrand():
    with pytest.raises(QuadratureError):
        adaptive_simpson(lambda t: 1.0 / t, -1.0, 1.0)


def test_cumulative_at_polynomial():
    xs = np.array([[0.9, 0.1], [0.5, 0.25]])  # unsorted on purpose
    got = cumulative_at(lambda t: 3.0 * t * t, 0.0, xs)
    assert np.max(np.abs(got - xs ** 3)) < 1e-9


def test_cumulative_at_descending_from_interior_origin():
    xs = np.linspace(0.2, 2.0, 7)
    got = cumulative_at(np.cos, 1.0, xs)
    assert np.max(np.abs(got - (np.sin(xs) - np.sin(1.0)))) < 1e-9
