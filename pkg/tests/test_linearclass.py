"""Linear curvature relations, Moebius couplings, the ten-row reduction."""
import numpy as np
import pytest

from wsurf.curvature import CurvatureField
from wsurf.errors import DegenerateRelationError
from wsurf.linearclass import (LinearRelation, MoebiusCoeffs, BasicClassId,
                               relation_from_moebius, moebius_from_relation,
                               check_relation, fit_relation, parallel_relation,
                               classify, basic_pde, row_geometry, BASIC_ROWS)

ROW_PARAMS = {4: {"beta": 3.0}, 5: {"beta": 0.5}, 6: {"beta": 3.0},
              7: {"beta": 0.5}, 10: {"beta": 1.0, "gamma": -1.0}}


def synthetic_curv(nu1, nu2, du=0.01, dv=0.01):
    z = np.zeros_like(nu1)
    return CurvatureField(nu1=nu1, nu2=nu2, gamma1=z, gamma2=z.copy(),
                          K=nu1 * nu2, H=0.5 * (nu1 + nu2),
                          Hprime=0.5 * (nu1 - nu2),
                          rho1=1.0 / nu1, rho2=1.0 / nu2, du=du, dv=dv)


def test_moebius_relation_roundtrip():
    m = MoebiusCoeffs(A=2.0, B=1.0, C=0.5, D=-1.0)
    rel = relation_from_moebius(m)
    assert rel.coefficients() == (3.0, -1.0, 1.0, 0.5)
    back = moebius_from_relation(rel)
    assert (back.A, back.B, back.C, back.D) == (2.0, 1.0, 0.5, -1.0)
    nu2 = np.linspace(0.5, 1.5, 7)
    assert np.allclose(m.apply(nu2), (2.0 * nu2 + 1.0) / (0.5 * nu2 - 1.0))


def test_degenerate_coefficients_are_rejected():
    with pytest.raises(DegenerateRelationError):
        LinearRelation(1.0, 1.0, 0.0, 0.0)       # discriminant = 0
    with pytest.raises(DegenerateRelationError):
        MoebiusCoeffs(A=2.0, B=4.0, C=1.0, D=2.0)  # B*C = A*D
    with pytest.raises(DegenerateRelationError):
        classify(LinearRelation(0.0, 1.0, 0.0, 0.0))  # beta-only relation
    with pytest.raises(ValueError):
        LinearRelation(np.nan, 0.0, 0.0, 1.0)


def test_fit_relation_recovers_affine_coupling():
    x = np.linspace(0.2, 1.2, 21)
    nu2 = x[:, None] + 0.1 * x[None, :]
    curv = synthetic_curv(2.0 * nu2 + 1.0, nu2)
    rel, rms = fit_relation(curv)
    assert rms < 1e-12
    assert np.allclose(rel.coefficients(), (-1.0 / 3.0, 1.0, -1.0 / 3.0, 0.0),
                       atol=1e-10)
    assert check_relation(curv, rel).max_abs < 1e-12


def test_classify_pure_rows():
    assert classify(LinearRelation(1.0, 0.0, 0.0, 0.0)).row == 1
    r2 = classify(LinearRelation(1.0, 0.0, -0.5, 0.0))
    assert (r2.row, r2.scale) == (2, 1.0)
    r3 = classify(LinearRelation(0.0, 1.0, -1.0, 0.0))
    assert (r3.row, r3.scale, r3.realizable) == (3, 1.0, True)
    r9 = classify(LinearRelation(0.0, 2.0, 0.0, 1.0))
    assert (r9.row, r9.scale) == (9, 1.0)
    r8 = classify(LinearRelation(0.0, 0.0, -1.0, 1.0))
    assert (r8.row, r8.scale, r8.offset_a) == (8, 1.0, None)


def test_classify_ratio_rows_and_reflection():
    r4 = classify(LinearRelation(1.0, -3.0, 0.0, 0.0))
    assert (r4.row, r4.params["beta"], r4.scale) == (4, 3.0, None)
    # H = -3 H' is the mirror image: same row, recorded reflection
    r4m = classify(LinearRelation(1.0, 3.0, 0.0, 0.0))
    assert (r4m.row, r4m.params["beta"], r4m.scale) == (4, 3.0, -1.0)
    r5 = classify(LinearRelation(1.0, -0.5, 0.0, 0.0))
    assert (r5.row, r5.params["beta"]) == (5, 0.5)
    r6 = classify(LinearRelation(1.0, -3.0, -1.0, 0.0))
    assert (r6.row, r6.params["beta"], r6.scale) == (6, 3.0, 1.0)
    r7 = classify(LinearRelation(1.0, -0.5, -2.0, 0.0))
    assert (r7.row, r7.params["beta"], r7.scale) == (7, 0.5, 2.0)


def test_unrealizable_mirror_of_row3():
    r = classify(LinearRelation(0.0, 1.0, 1.0, 0.0))
    assert r.row == 3
    assert r.scale == -1.0
    assert not r.realizable


def test_classify_offset_reductions():
    # K = 2H reduces to a minimal surface at offset 1/2
    r = classify(LinearRelation(2.0, 0.0, 0.0, 1.0))
    assert (r.row, r.offset_a) == (1, 0.5)
    # K = 2H - 2: negative discriminant, offset removes H, lands on row 8
    r = classify(LinearRelation(2.0, 0.0, -2.0, 1.0))
    assert (r.row, r.offset_a, r.scale) == (8, 0.5, 0.5)
    # K = 2H + H' - 2 keeps an H' term: row 10 with transported coefficients
    r = classify(LinearRelation(2.0, 1.0, -2.0, 1.0))
    assert (r.row, r.offset_a) == (10, 0.5)
    assert abs(r.params["beta"] - 2.0) < 1e-12
    assert abs(r.params["gamma"] + 4.0) < 1e-12


def test_classify_survives_tiny_quadratic_coefficient():
    # near-degenerate quadratic for the offset: the naive root formula
    # cancels and used to send the recursion in circles
    rel = LinearRelation(1.0, 0.3, 1e-8, 1.0)
    r = classify(rel)
    assert r.row == 7
    a = r.offset_a
    assert a is not None and abs(a) < 1.0 + 1e-6
    assert abs(1e-8 * a * a + 1.0 * a - 1.0) < 1e-12


def test_classify_is_scale_invariant():
    rel = LinearRelation(0.7, -0.3, -1.1, 0.9)
    base = classify(rel)
    for s in (2.0, -0.5, 1e3):
        r = classify(rel.scaled(s))
        assert r.row == base.row
        if base.offset_a is not None:
            assert abs(r.offset_a - base.offset_a) <= 1e-9 * abs(base.offset_a)


def test_parallel_relation_preserves_discriminant():
    lin = LinearRelation(1.0, -0.4, 0.3, 0.0)
    frac = LinearRelation(0.8, -0.4, 0.3, 1.0)
    for rel, a in ((lin, 0.2), (lin, -0.7), (frac, 0.2), (frac, 0.35)):
        out = parallel_relation(rel, a)
        assert abs(out.discriminant - rel.discriminant) < 1e-12
    with pytest.raises(ValueError):
        parallel_relation(lin, 0.2, eps=0.5)


def test_class_id_validation():
    with pytest.raises(ValueError):
        BasicClassId(row=0)
    with pytest.raises(ValueError):
        BasicClassId(row=4, params={"beta": 0.5})
    with pytest.raises(ValueError):
        BasicClassId(row=10, params={"beta": 1.0, "gamma": 0.5})


def test_basic_pde_operators():
    expected = {1: "laplace", 2: "laplace", 3: "laplace_star",
                4: "laplace_star", 5: "dalembert_star", 6: "laplace_star",
                7: "dalembert_star", 8: "dalembert", 9: "laplace_star",
                10: "laplace_star"}
    for row in BASIC_ROWS:
        prob = basic_pde(row, ROW_PARAMS.get(row))
        assert prob.operator == expected[row]
        assert prob.row == row


def test_basic_pde_right_hand_sides():
    assert basic_pde(1).rhs(0.0) == -1.0
    assert abs(basic_pde(8).rhs(np.pi / 2) - 1.0) < 1e-15
    assert basic_pde(9).rhs(np.array([0.3]))[0] == -2.0
    # row 4 with beta = 3: coefficient 2b(b+1)/(b-1)^2 = 6
    assert basic_pde(4, {"beta": 3.0}).rhs(np.array([2.0]))[0] == -12.0


def test_basic_pde_parameter_validation():
    with pytest.raises(KeyError):
        basic_pde(4)
    with pytest.raises(ValueError):
        basic_pde(4, {"beta": 0.5})
    with pytest.raises(ValueError):
        basic_pde(7, {"beta": 3.0})
    with pytest.raises(ValueError):
        basic_pde(10, {"beta": 1.0, "gamma": 0.5})
    with pytest.raises(ValueError):
        basic_pde(11)


def test_row_geometry_substitutions_are_consistent():
    for row in BASIC_ROWS:
        geo = row_geometry(row, ROW_PARAMS.get(row))
        lo, hi = geo.pair.interval
        nu = np.linspace(lo + 0.05 * (hi - lo), hi - 0.05 * (hi - lo), 41)
        s = np.asarray(geo.to_unknown(nu), dtype=float)
        # inverse of the substitution
        assert np.max(np.abs(geo.from_unknown(s) - nu)) < 1e-12
        # the PDE-side map from unknown back to the geometric function
        assert np.max(np.abs(geo.problem.nu_of(s) - nu)) < 1e-12
        # analytic derivative of the substitution against differences
        h = 1e-6 * (hi - lo)
        fd = (np.asarray(geo.to_unknown(nu + h)) -
              np.asarray(geo.to_unknown(nu - h))) / (2.0 * h)
        scale = np.max(np.abs(fd)) + 1.0
        assert np.max(np.abs(np.asarray(geo.d_to_unknown(nu)) - fd)) / scale < 1e-8
        assert geo.gauge.a > 0 and geo.gauge.b > 0


def test_row_geometry_transform_matches_problem_transform():
    # where the problem carries a star transform, its value/derivative
    # functions must be differentiable consistently too
    for row in (3, 4, 5, 6, 7, 9, 10):
        geo = row_geometry(row, ROW_PARAMS.get(row))
        prob = geo.problem
        lo, hi = geo.pair.interval
        nu = np.linspace(lo + 0.1 * (hi - lo), hi - 0.1 * (hi - lo), 21)
        s = np.asarray(geo.to_unknown(nu), dtype=float)
        h = 1e-6 * max(1.0, np.max(np.abs(s)))
        fd = (prob.transform(s + h) - prob.transform(s - h)) / (2.0 * h)
        scale = np.max(np.abs(fd)) + 1.0
        assert np.max(np.abs(prob.dtransform(s) - fd)) / scale < 1e-8
        fd2 = (prob.transform(s + h) - 2.0 * prob.transform(s)
               + prob.transform(s - h)) / (h * h)
        scale2 = np.max(np.abs(fd2)) + 1.0
        assert np.max(np.abs(prob.d2transform(s) - fd2)) / scale2 < 1e-3
        back = prob.inverse(prob.transform(s))
        assert np.max(np.abs(back - s)) < 1e-10
