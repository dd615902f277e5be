"""Parallel (offset) surfaces and how curvature data transports along them.

For an offset distance a, the parallel surface is z + a*l with l the unit
normal of the curvature convention (nu1 - nu2 > 0).  With
eps = sign((1 - a nu1)(1 - a nu2)), the principal curvatures map as::

    nu_i_bar = eps nu_i / (1 - a nu_i),    nu_i = eps nu_i_bar / (1 + a eps nu_i_bar)

the metric as E_bar = (1 - a nu1)^2 E, G_bar = (1 - a nu2)^2 G, and a
Weingarten pair (f, g) as f_bar = eps f/(1 - a f), g_bar = eps g/(1 - a g).
The offset of a surface in natural parameters is again in natural
parameters for the transported pair and gauge, and the natural PDE residual
transports by the exact pointwise factor eps/((1-a f)^2 (1-a g)^2); the two
``verify_*`` functions measure those statements on concrete fields.
"""
from __future__ import annotations

import numpy as np

from .curvature import CurvatureField, ResidualField, fundamental_forms, second_fundamental_form, curvature_field
from .errors import ReciprocalSingularityError, SingularOffsetError
from .grid import SurfaceGrid
from .natural import (
    NaturalGauge, NuField, natural_metric, natural_pde_residual, naturality_check,
)
from .pairs import WeingartenPair

__all__ = [
    "offset_surface", "offset_sign", "parallel_principal_curvatures",
    "parallel_invariants", "parallel_metric", "parallel_weingarten_pair",
    "parallel_gauge", "verify_parallel_naturality", "verify_pde_invariance",
]


def _constant_sign(values: np.ndarray, what: str, tol: float) -> float:
    if np.min(np.abs(values)) < tol:
        raise SingularOffsetError(
            f"{what} reaches {np.min(np.abs(values)):.3e}; offset hits a focal set"
        )
    signs = np.sign(values)
    if signs.max() != signs.min():
        raise SingularOffsetError(f"{what} changes sign across the patch")
    return float(signs.flat[0])


def offset_sign(nu1, nu2, a: float, tol_singular: float = 1e-6) -> float:
    """eps = sign((1 - a nu1)(1 - a nu2)), checked to be constant."""
    s1 = _constant_sign(1.0 - a * np.asarray(nu1), "1 - a*nu1", tol_singular)
    s2 = _constant_sign(1.0 - a * np.asarray(nu2), "1 - a*nu2", tol_singular)
    return s1 * s2


def offset_surface(
    grid: SurfaceGrid, a: float, tol_singular: float = 1e-6
) -> tuple[SurfaceGrid, float]:
    """Offset grid z + a*l and the orientation sign eps of the offset.

    Raises
    ------
    SingularOffsetError
        If 1 - a*nu_i vanishes (or changes sign) on the patch.
    """
    forms, normal = fundamental_forms(grid)
    curv = curvature_field(forms)
    eps = offset_sign(curv.nu1, curv.nu2, a, tol_singular)
    shifted = SurfaceGrid(grid.spec, grid.points + a * normal)
    return shifted, eps


def parallel_principal_curvatures(
    nu1, nu2, a: float, eps: float | None = None,
    direction: str = "forward", tol_singular: float = 1e-6,
):
    """Transport principal curvatures across the offset map.

    direction="forward" maps base (nu1, nu2) to the offset surface values
    (eps computed if not supplied); direction="inverse" maps offset values
    back to the base surface and requires the forward eps.

    Returns
    -------
    (ndarray, ndarray, float)
        Transported channels and the eps actually used.
    """
    nu1 = np.asarray(nu1, dtype=float)
    nu2 = np.asarray(nu2, dtype=float)
    if direction == "forward":
        if eps is None:
            eps = offset_sign(nu1, nu2, a, tol_singular)
        d1 = 1.0 - a * nu1
        d2 = 1.0 - a * nu2
        if min(np.min(np.abs(d1)), np.min(np.abs(d2))) < tol_singular:
            raise SingularOffsetError("1 - a*nu_i vanishes on the patch")
        return eps * nu1 / d1, eps * nu2 / d2, eps
    if direction == "inverse":
        if eps is None:
            raise ValueError("inverse transport requires the forward eps")
        d1 = 1.0 + a * eps * nu1
        d2 = 1.0 + a * eps * nu2
        if min(np.min(np.abs(d1)), np.min(np.abs(d2))) < tol_singular:
            raise ReciprocalSingularityError("1 + a*eps*nu_bar vanishes on the patch")
        return eps * nu1 / d1, eps * nu2 / d2, eps
    raise ValueError(f"unknown direction {direction!r}")


def parallel_invariants(K, H, Hprime, a: float, eps: float, direction: str = "forward"):
    """Transport (K, H, H') across the offset map.

    forward:  base -> offset with denominator 1 - 2aH + a^2 K;
    inverse:  offset -> base with denominator 1 + 2 a eps H + a^2 K.
    """
    K = np.asarray(K, dtype=float)
    H = np.asarray(H, dtype=float)
    Hprime = np.asarray(Hprime, dtype=float)
    if direction == "forward":
        D = 1.0 - 2.0 * a * H + a * a * K
        if np.min(np.abs(D)) < 1e-12:
            raise SingularOffsetError("offset denominator vanishes")
        return K / D, eps * (H - a * K) / D, eps * Hprime / D
    if direction == "inverse":
        D = 1.0 + 2.0 * a * eps * H + a * a * K
        if np.min(np.abs(D)) < 1e-12:
            raise ReciprocalSingularityError("inverse offset denominator vanishes")
        return K / D, (eps * H + a * K) / D, eps * Hprime / D
    raise ValueError(f"unknown direction {direction!r}")


def parallel_metric(E, G, nu1, nu2, a: float):
    """Offset metric E_bar = (1-a nu1)^2 E, G_bar = (1-a nu2)^2 G."""
    return ((1.0 - a * np.asarray(nu1)) ** 2 * np.asarray(E),
            (1.0 - a * np.asarray(nu2)) ** 2 * np.asarray(G))


def parallel_weingarten_pair(
    pair: WeingartenPair, a: float, tol_singular: float = 1e-6
) -> tuple[WeingartenPair, float]:
    """Transported pair (f_bar, g_bar) over the same nu interval, plus eps.

    Closed-form integrals transport as If_bar = If - log|(1-af)/(1-af0)|
    (and likewise for Ig), so a pair with analytic integrals keeps them.
    """
    lo, hi = pair.interval
    nu_check = np.linspace(lo, hi, 1001)
    sf = _constant_sign(1.0 - a * pair.f(nu_check), "1 - a*f", tol_singular)
    sg = _constant_sign(1.0 - a * pair.g(nu_check), "1 - a*g", tol_singular)
    eps = sf * sg

    f, g = pair._f, pair._g
    df, dg = pair._df, pair._dg
    d2f, d2g = pair._d2f, pair._d2g

    def fbar(nu):
        return eps * f(nu) / (1.0 - a * f(nu))

    def gbar(nu):
        return eps * g(nu) / (1.0 - a * g(nu))

    def dfbar(nu):
        return eps * df(nu) / (1.0 - a * f(nu)) ** 2

    def dgbar(nu):
        return eps * dg(nu) / (1.0 - a * g(nu)) ** 2

    def d2fbar(nu):
        q = 1.0 - a * f(nu)
        return eps * (d2f(nu) * q + 2.0 * a * df(nu) ** 2) / q ** 3

    def d2gbar(nu):
        q = 1.0 - a * g(nu)
        return eps * (d2g(nu) * q + 2.0 * a * dg(nu) ** 2) / q ** 3

    If_bar = Ig_bar = None
    if pair._If is not None:
        def If_bar(nu, nu0, _If=pair._If):
            return _If(nu, nu0) - np.log(np.abs((1.0 - a * f(np.asarray(nu)))
                                                / (1.0 - a * f(nu0))))
    if pair._Ig is not None:
        def Ig_bar(nu, nu0, _Ig=pair._Ig):
            return _Ig(nu, nu0) - np.log(np.abs((1.0 - a * g(np.asarray(nu)))
                                                / (1.0 - a * g(nu0))))

    out = WeingartenPair(
        f=fbar, g=gbar, df=dfbar, dg=dgbar, d2f=d2fbar, d2g=d2gbar,
        If=If_bar, Ig=Ig_bar, interval=pair.interval,
        kind=f"parallel({pair.kind}, a={a})",
        params={"a": a, "eps": eps, "base": pair.kind},
    )
    return out, eps


def parallel_gauge(gauge: NaturalGauge, pair: WeingartenPair, a: float) -> NaturalGauge:
    """Gauge of the offset natural parameterization (same nu0)."""
    f0 = float(pair.f(gauge.nu0))
    g0 = float(pair.g(gauge.nu0))
    return NaturalGauge(
        a=gauge.a / abs(1.0 - a * f0),
        b=gauge.b / abs(1.0 - a * g0),
        nu0=gauge.nu0,
    )


def verify_parallel_naturality(
    pair: WeingartenPair, gauge: NaturalGauge, nu_field: NuField, a: float
):
    """Offset of a natural parameterization is natural: measure the defect.

    Builds the base metric from the gauge, transports metric and curvatures
    to the offset surface, and runs :func:`naturality_check` there.

    Returns
    -------
    (ResidualField, float, float)
        As for naturality_check, on the offset data.
    """
    nu = nu_field.values
    E, G = natural_metric(pair, gauge, nu)
    f, g = pair.f(nu), pair.g(nu)
    Eb, Gb = parallel_metric(E, G, f, g, a)
    n1b, n2b, _ = parallel_principal_curvatures(f, g, a, direction="forward")
    return naturality_check(Eb, Gb, n1b, n2b)


def verify_pde_invariance(
    pair: WeingartenPair, gauge: NaturalGauge, nu_field: NuField, a: float
) -> dict:
    """Natural PDE residual transports by eps/((1-af)^2 (1-ag)^2): measure it.

    Evaluates the residual of the base pair and of the transported pair on
    the *same* nu field and returns the comparison report.
    """
    res_base = natural_pde_residual(pair, gauge, nu_field)
    pair_bar, eps = parallel_weingarten_pair(pair, a)
    gauge_bar = parallel_gauge(gauge, pair, a)
    res_bar = natural_pde_residual(pair_bar, gauge_bar, nu_field)

    nu = nu_field.values
    factor = eps * (1.0 - a * pair.f(nu)) ** 2 * (1.0 - a * pair.g(nu)) ** 2
    back = factor * res_bar.values
    scale = max(np.max(np.abs(pair.f(nu) * pair.g(nu) * pair.separation(nu))), 1e-30)
    diff = np.abs(back - res_base.values)[1:-1, 1:-1]
    return {
        "eps": eps,
        "max_rel_diff": float(np.max(diff) / scale),
        "scale": float(scale),
        "res_base_max": res_base.max_abs,
        "res_offset_max": res_bar.max_abs,
    }
