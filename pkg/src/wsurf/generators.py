"""Surface generators: named test surfaces, curvature-driven constructions,
rotational reductions of the natural PDE, and frame reconstruction.

The reconstruction path is the converse of the analysis path: given a
Weingarten pair, a gauge and a grid of the function nu satisfying the
natural PDE, integrate the moving-frame system

    z_u = sqrt(E) X          z_v = sqrt(G) Y
    X_u = sqrt(E) (g1 Y + n1 l)     X_v = sqrt(G) g2 Y
    Y_u = -sqrt(E) g1 X             Y_v = sqrt(G) (-g2 X + n2 l)
    l_u = -sqrt(E) n1 X             l_v = -sqrt(G) n2 Y

(n1 = f(nu), n2 = g(nu); g1, g2 the canonical derivations of the frame)
to recover the surface itself.  Integrating in both sweep orders gives a
compatibility defect that is small exactly when the input data satisfy
the structure equations.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import cumulative_trapezoid
from scipy.interpolate import RectBivariateSpline

from .errors import (
    CompatibilityError, PDEResidualError, RangeError, SmoothnessError,
    UnknownSurfaceError,
)
from .grid import GridSpec, SurfaceGrid
from .natural import (
    NaturalGauge, NuField, natural_metric, natural_pde_residual,
    geodesic_curvatures,
)
from .pairs import WeingartenPair

__all__ = [
    "named_surface", "NAMED_SURFACES", "meridian_from_curvature",
    "SpaceCurveSpec", "GammaSurfaceResult", "gamma_surface",
    "RotationalSolution", "rotational_natural_ode", "meridian_curvature_ode",
    "rotational_basic45", "reconstruct_surface",
]


# ---------------------------------------------------------------------------
# named parametric surfaces
# ---------------------------------------------------------------------------

def _plane(u, v):
    return np.stack([u, v, np.zeros_like(u)], axis=-1)


def _sphere(u, v, r=1.0):
    return np.stack([
        r * np.sin(u) * np.cos(v), r * np.sin(u) * np.sin(v), r * np.cos(u),
    ], axis=-1)


def _cylinder(u, v, r=1.0):
    return np.stack([r * np.cos(u), r * np.sin(u), v], axis=-1)


def _torus(u, v, R=2.0, r=1.0):
    w = R + r * np.cos(v)
    return np.stack([w * np.cos(u), w * np.sin(u), r * np.sin(v)], axis=-1)


def _catenoid(u, v):
    return np.stack([
        np.cosh(u) * np.cos(v), np.cosh(u) * np.sin(v), u,
    ], axis=-1)


def _pseudosphere(u, v):
    if np.any(u <= 0):
        raise ValueError("pseudosphere patch needs u > 0")
    s = 1.0 / np.cosh(u)
    return np.stack([s * np.cos(v), s * np.sin(v), u - np.tanh(u)], axis=-1)


def _spheroid(u, v, a=1.0, c=1.5):
    return np.stack([
        a * np.cos(v) * np.cos(u), a * np.cos(v) * np.sin(u), c * np.sin(v),
    ], axis=-1)


NAMED_SURFACES = {
    "plane": (_plane, GridSpec(41, 41, -1.0, -1.0, 0.05, 0.05)),
    "sphere": (_sphere, GridSpec(41, 41, 0.4, 0.0, 0.0575, 0.05)),
    "cylinder": (_cylinder, GridSpec(41, 41, 0.0, -1.0, 2.0 * math.pi / 45, 0.05)),
    "torus": (_torus, GridSpec(41, 41, 0.0, 0.0, 0.12, 0.12)),
    "catenoid": (_catenoid, GridSpec(41, 41, -1.0, 0.0, 0.05, 0.1)),
    "pseudosphere": (_pseudosphere, GridSpec(41, 41, 0.5, 0.0, 0.05, 0.1)),
    "spheroid": (_spheroid, GridSpec(41, 41, 0.0, -1.2, 0.05, 0.06)),
}


def named_surface(name: str, spec: GridSpec | None = None, **params) -> SurfaceGrid:
    """Sample a built-in parametric surface on a grid.

    Each surface has a sensible default patch; pass ``spec`` to override.
    Extra keyword parameters are geometry parameters (e.g. ``r`` for the
    cylinder, ``R, r`` for the torus, ``a, c`` for the spheroid).
    """
    try:
        fn, default_spec = NAMED_SURFACES[name]
    except KeyError:
        known = ", ".join(sorted(NAMED_SURFACES))
        raise UnknownSurfaceError(f"unknown surface {name!r} (known: {known})")
    spec = spec or default_spec
    U, V = spec.meshgrid()
    try:
        pts = fn(U, V, **params)
    except TypeError as exc:
        raise ValueError(f"bad parameters for {name!r}: {exc}") from None
    return SurfaceGrid(spec, pts)


# ---------------------------------------------------------------------------
# plane curves from curvature; surfaces over a space curve
# ---------------------------------------------------------------------------

def meridian_from_curvature(kappa, ds: float, theta0: float = 0.0):
    """Unit-speed plane curve (lam, mu) with given curvature samples.

    ``kappa`` is sampled on a uniform grid of step ``ds``.  Returns
    ``(lam, mu, theta)`` where theta is the tangent angle, with
    (lam', mu') = (sin theta, cos theta) — by construction the curve is
    exactly unit speed.
    """
    kappa = np.asarray(kappa, dtype=float)
    if kappa.ndim != 1 or kappa.size < 2:
        raise ValueError("kappa must be a 1-d array with at least 2 samples")
    theta = theta0 + cumulative_trapezoid(kappa, dx=ds, initial=0.0)
    lam = cumulative_trapezoid(np.sin(theta), dx=ds, initial=0.0)
    mu = cumulative_trapezoid(np.cos(theta), dx=ds, initial=0.0)
    return lam, mu, theta


@dataclass(frozen=True)
class SpaceCurveSpec:
    """A space curve given by curvature and torsion as functions of arclength."""

    kappa: object
    tau: object

    def __call__(self, v):
        return float(self.kappa(v)), float(self.tau(v))


def _gram_schmidt3(t, y1, y2):
    t = t / np.linalg.norm(t)
    y1 = y1 - np.dot(y1, t) * t
    y1 = y1 / np.linalg.norm(y1)
    y2 = y2 - np.dot(y2, t) * t - np.dot(y2, y1) * y1
    return t, y1, y2 / np.linalg.norm(y2)


def _curve_frame(curve: SpaceCurveSpec, v_nodes):
    """Integrate position + twist-free normal frame along the curve.

    The frame (t, y1, y2) carries the angle phi = -integral(tau), so the
    Frenet normal is cos(phi) y1 - sin(phi) y2 and the frame equations
    contain no torsion term.  RK4 with re-orthonormalization per step.
    """
    n = len(v_nodes)
    c = np.zeros((n, 3))
    t = np.zeros((n, 3))
    y1 = np.zeros((n, 3))
    y2 = np.zeros((n, 3))
    phi = np.zeros(n)
    t[0] = (1.0, 0.0, 0.0)
    y1[0] = (0.0, 1.0, 0.0)
    y2[0] = (0.0, 0.0, 1.0)

    def rhs(v, state):
        cc, tt, u1, u2, ph = state
        kap, tor = curve(v)
        co, si = math.cos(ph), math.sin(ph)
        return (
            tt,
            kap * (co * u1 - si * u2),
            -kap * co * tt,
            kap * si * tt,
            -tor,
        )

    for k in range(n - 1):
        h = v_nodes[k + 1] - v_nodes[k]
        state = (c[k], t[k], y1[k], y2[k], phi[k])
        k1 = rhs(v_nodes[k], state)
        s2 = tuple(a + 0.5 * h * b for a, b in zip(state, k1))
        k2 = rhs(v_nodes[k] + 0.5 * h, s2)
        s3 = tuple(a + 0.5 * h * b for a, b in zip(state, k2))
        k3 = rhs(v_nodes[k] + 0.5 * h, s3)
        s4 = tuple(a + h * b for a, b in zip(state, k3))
        k4 = rhs(v_nodes[k] + h, s4)
        new = tuple(
            a + (h / 6.0) * (b1 + 2.0 * b2 + 2.0 * b3 + b4)
            for a, b1, b2, b3, b4 in zip(state, k1, k2, k3, k4))
        tt, u1, u2 = _gram_schmidt3(new[1], new[2], new[3])
        c[k + 1], t[k + 1], y1[k + 1], y2[k + 1] = new[0], tt, u1, u2
        phi[k + 1] = new[4]
    return c, t, y1, y2, phi


@dataclass
class GammaSurfaceResult:
    """Surface swept by a plane curve along a space curve, plus the
    invariants predicted by the construction (before any orientation
    normalization)."""

    grid: SurfaceGrid
    nu1: np.ndarray
    nu2: np.ndarray
    gamma1: np.ndarray
    gamma2: np.ndarray
    jacobian: np.ndarray


def gamma_surface(curve: SpaceCurveSpec, kappa1, spec: GridSpec,
                  smooth_tol: float = 1e-8) -> GammaSurfaceResult:
    """Sweep the unit-speed plane curve of curvature ``kappa1(u)`` through
    the twist-free normal planes of ``curve``.

    z(u, v) = c(v) + lam(u) y1(v) + mu(u) y2(v).

    The patch is regular iff J = 1 - kappa (lam cos phi - mu sin phi)
    stays away from zero; :class:`SmoothnessError` otherwise.  The
    predicted principal data are nu1 = kappa1(u) along u, and along v

        nu2 = -kappa (lam' sin phi + mu' cos phi) / J,
        gamma2 = -kappa (lam' cos phi - mu' sin phi) / J,  gamma1 = 0.
    """
    u_nodes = spec.u
    v_nodes = spec.v
    kap1 = np.array([float(kappa1(u)) for u in u_nodes])
    lam, mu, theta = meridian_from_curvature(kap1, spec.du, theta0=0.0)
    dlam, dmu = np.sin(theta), np.cos(theta)

    c, t, y1, y2, phi = _curve_frame(curve, v_nodes)
    kap = np.array([float(curve.kappa(v)) for v in v_nodes])

    pts = (c[None, :, :] + lam[:, None, None] * y1[None, :, :]
           + mu[:, None, None] * y2[None, :, :])
    co, si = np.cos(phi)[None, :], np.sin(phi)[None, :]
    J = 1.0 - kap[None, :] * (lam[:, None] * co - mu[:, None] * si)
    if np.min(np.abs(J)) <= smooth_tol * max(1.0, float(np.max(np.abs(kap)))):
        raise SmoothnessError(
            "sweep degenerates: the plane curve reaches the focal distance "
            f"1/kappa of the spine (min |J| = {np.min(np.abs(J)):.3e})"
        )
    nu2 = -kap[None, :] * (dlam[:, None] * si + dmu[:, None] * co) / J
    gamma2 = -kap[None, :] * (dlam[:, None] * co - dmu[:, None] * si) / J
    return GammaSurfaceResult(
        grid=SurfaceGrid(spec, pts),
        nu1=np.broadcast_to(kap1[:, None], J.shape).copy(),
        nu2=nu2,
        gamma1=np.zeros_like(J),
        gamma2=gamma2,
        jacobian=J,
    )


# ---------------------------------------------------------------------------
# rotational reductions (one-variable form of the natural PDE)
# ---------------------------------------------------------------------------

@dataclass
class RotationalSolution:
    """Solution of the rotational reduction w'' = -C w^(1/beta), w = nu^beta."""

    beta: float
    u: np.ndarray
    nu: np.ndarray
    dnu: np.ndarray
    w: np.ndarray
    dw: np.ndarray
    energy_drift: float


def _c_const(beta: float) -> float:
    return 2.0 * beta * (beta + 1.0) / (beta - 1.0) ** 2


def rotational_natural_ode(beta: float, *, nu0: float = 1.0, dnu0: float = 0.0,
                           u_max: float, du: float) -> RotationalSolution:
    """Integrate the u-only reduction of the basic-row PDE for H = beta H'.

    In the single-variable case the canonical PDE collapses to the ODE
    (nu^beta)'' = -C nu with C = 2 beta (beta+1)/(beta-1)^2, identical for
    the elliptic (beta > 1) and hyperbolic (0 < beta < 1) rows.  RK4 with
    conserved energy  (w')^2/2 + C beta/(beta+1) w^((beta+1)/beta).

    Raises :class:`RangeError` if nu leaves (0, inf) before ``u_max``.
    """
    if beta <= 0 or beta == 1.0:
        raise ValueError("beta must be positive and != 1")
    if nu0 <= 0:
        raise RangeError("nu0 must be positive")
    C = _c_const(beta)
    n = int(round(u_max / du)) + 1
    u = np.arange(n) * du
    w = np.empty(n)
    dw = np.empty(n)
    w[0] = nu0 ** beta
    dw[0] = beta * nu0 ** (beta - 1.0) * dnu0

    def acc(wv):
        if wv <= 1e-14:
            raise RangeError(
                "nu reached 0: the rotational profile ends before u_max")
        if wv > 1e12:
            raise RangeError("nu blew up before u_max")
        return -C * wv ** (1.0 / beta)

    e0 = 0.5 * dw[0] ** 2 + C * beta / (beta + 1.0) * w[0] ** ((beta + 1.0) / beta)
    drift = 0.0
    for k in range(n - 1):
        wk, vk = w[k], dw[k]
        a1 = acc(wk)
        # acceleration depends on position only, so the two midpoint
        # stages of the 4th-order Nystrom step coincide
        a2 = acc(wk + 0.5 * du * vk + 0.125 * du * du * a1)
        a4 = acc(wk + du * vk + 0.5 * du * du * a2)
        w[k + 1] = wk + du * vk + du * du / 6.0 * (a1 + 2.0 * a2)
        dw[k + 1] = vk + du / 6.0 * (a1 + 4.0 * a2 + a4)
        if w[k + 1] <= 1e-14:
            raise RangeError(
                "nu reached 0: the rotational profile ends before u_max")
        e = (0.5 * dw[k + 1] ** 2
             + C * beta / (beta + 1.0) * w[k + 1] ** ((beta + 1.0) / beta))
        drift = max(drift, abs(e - e0) / max(abs(e0), 1e-300))
    nu = w ** (1.0 / beta)
    dnu = dw * nu / (beta * w)
    return RotationalSolution(beta=beta, u=u, nu=nu, dnu=dnu, w=w, dw=dw,
                              energy_drift=drift)


def meridian_curvature_ode(beta: float, *, kappa0: float = 1.0,
                           dkappa0: float = 0.0, s_max: float, ds: float):
    """Meridian-curvature equation kap'' = -2 kap^3/(beta + 1) by RK4.

    Returns ``(s, kappa, dkappa, drift)`` where drift is the maximum
    relative wander of the first integral (kap')^2 + kap^4/(beta + 1).
    """
    if beta <= -1.0:
        raise ValueError("beta must exceed -1")
    n = int(round(s_max / ds)) + 1
    s = np.arange(n) * ds
    kap = np.empty(n)
    dk = np.empty(n)
    kap[0], dk[0] = kappa0, dkappa0

    def acc(x):
        return -2.0 * x ** 3 / (beta + 1.0)

    f0 = dk[0] ** 2 + kap[0] ** 4 / (beta + 1.0)
    drift = 0.0
    for k in range(n - 1):
        xk, vk = kap[k], dk[k]
        a1 = acc(xk)
        # position-only force: the two midpoint stages coincide
        a2 = acc(xk + 0.5 * ds * vk + 0.125 * ds * ds * a1)
        a4 = acc(xk + ds * vk + 0.5 * ds * ds * a2)
        kap[k + 1] = xk + ds * vk + ds * ds / 6.0 * (a1 + 2.0 * a2)
        dk[k + 1] = vk + ds / 6.0 * (a1 + 4.0 * a2 + a4)
        f = dk[k + 1] ** 2 + kap[k + 1] ** 4 / (beta + 1.0)
        drift = max(drift, abs(f - f0) / max(abs(f0), 1e-300))
    return s, kap, dk, drift


def rotational_basic45(beta: float, sol: RotationalSolution,
                       n_v: int = 49, dv: float = 0.08) -> SurfaceGrid:
    """Rotation surface realizing H = beta H' from a profile solution.

    The meridian tangent angle obeys theta' = nu1 sqrt(E) with
    sqrt(E) = nu^-(1+beta)/2, and the parallel-circle curvature must come
    out as nu2, which fixes the initial angle and radius::

        cos(theta_0) = rho_0 g(nu_0),   sin(theta_0) (g - f) = rho_0 g' nu_s.

    The surface is ((rho_0 - lam) cos v, (rho_0 - lam) sin v, mu) with
    lam = int sqrt(E) sin theta, mu = int sqrt(E) cos theta.
    """
    if sol.beta != beta:
        raise ValueError("solution was computed for a different beta")
    if beta > 1:
        ratio = (beta + 1.0) / (beta - 1.0)
        g = sol.nu
        dg_dnu = 1.0
    elif 0 < beta < 1:
        ratio = (beta + 1.0) / (1.0 - beta)
        g = -sol.nu
        dg_dnu = -1.0
    else:
        raise ValueError("beta must be positive and != 1")
    f = ratio * sol.nu

    sqrtE = sol.nu ** (-(1.0 + beta) / 2.0)
    nu_s0 = sol.dnu[0] / sqrtE[0]
    # initial angle/radius from the two pointwise constraints at u = 0
    sin_part = dg_dnu * nu_s0 / (g[0] - f[0])
    theta0 = math.atan2(sin_part, g[0])
    rho0 = math.cos(theta0) / g[0]
    if rho0 <= 0:
        raise RangeError("initial profile radius is not positive")

    theta = theta0 + cumulative_trapezoid(f * sqrtE, x=sol.u, initial=0.0)
    lam = cumulative_trapezoid(sqrtE * np.sin(theta), x=sol.u, initial=0.0)
    mu = cumulative_trapezoid(sqrtE * np.cos(theta), x=sol.u, initial=0.0)
    rho = rho0 - lam
    if np.min(rho) <= 0:
        raise RangeError("profile radius crosses the rotation axis")

    v = np.arange(n_v) * dv
    pts = np.stack([
        rho[:, None] * np.cos(v)[None, :],
        rho[:, None] * np.sin(v)[None, :],
        np.broadcast_to(mu[:, None], (len(rho), n_v)).copy(),
    ], axis=-1)
    du = sol.u[1] - sol.u[0]
    return SurfaceGrid(GridSpec(len(rho), n_v, 0.0, 0.0, du, dv), pts)


# ---------------------------------------------------------------------------
# frame reconstruction from natural data
# ---------------------------------------------------------------------------

def _rk4_line(state0, coeff_nodes, coeff_mids, h, rhs):
    """RK4 along one grid line; coefficients given at nodes and midpoints.

    ``state0``: (4, 3) rows z, X, Y, l.  Returns states at all nodes.
    """
    n = coeff_nodes.shape[0]
    out = np.empty((n, 4, 3))
    out[0] = state0
    for k in range(n - 1):
        s = out[k]
        cn = coeff_nodes[k]
        cm = coeff_mids[k]
        cnn = coeff_nodes[k + 1]
        k1 = rhs(cn, s)
        k2 = rhs(cm, s + 0.5 * h * k1)
        k3 = rhs(cm, s + 0.5 * h * k2)
        k4 = rhs(cnn, s + h * k3)
        nxt = s + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        X, Y, l = _gram_schmidt3(nxt[1], nxt[2], nxt[3])
        out[k + 1] = np.stack([nxt[0], X, Y, l])
    return out


def _rhs_u(c, s):
    a1, a2, a3 = c
    z, X, Y, l = s
    return np.stack([a1 * X, a2 * Y + a3 * l, -a2 * X, -a3 * X])


def _rhs_v(c, s):
    b1, b2, b3 = c
    z, X, Y, l = s
    return np.stack([b1 * Y, b2 * Y, -b2 * X + b3 * l, -b3 * Y])


def _sample(splines, xs, ys):
    """Evaluate a triple of splines on the tensor grid xs x ys -> (nx, ny, 3)."""
    return np.stack([sp(xs, ys) for sp in splines], axis=-1)


def reconstruct_surface(pair: WeingartenPair, gauge: NaturalGauge,
                        nu_field: NuField, *, tol_pde: float = 1e-3,
                        compat_tol: float = 1e-3):
    """Integrate the frame system to recover a surface from natural data.

    The input nu grid must satisfy the natural PDE of the pair: the
    relative residual (against the zero-order term scale) is checked
    first and :class:`PDEResidualError` raised beyond ``tol_pde``.

    The surface is integrated twice (u-lines first, then v-lines, and in
    the opposite order); the maximum disagreement, relative to the patch
    extent, is the compatibility defect.  A defect beyond ``compat_tol``
    raises :class:`CompatibilityError` — this is what happens when the
    data solve the PDE but not the full structure equations, or when the
    grid is far too coarse to integrate.

    Returns (SurfaceGrid, info) with the defect and residual in info.
    """
    res = natural_pde_residual(pair, gauge, nu_field)
    nu = nu_field.values
    f = pair.f(nu)
    g = pair.g(nu)
    scale = float(np.max(np.abs(f * g * (f - g)))) + 1e-300
    pde_rel = res.max_abs / scale
    if pde_rel > tol_pde:
        raise PDEResidualError(
            f"nu grid does not satisfy the natural PDE: relative residual "
            f"{pde_rel:.3e} > {tol_pde:.1e}"
        )

    E, G = natural_metric(pair, gauge, nu)
    g1, g2 = geodesic_curvatures(pair, gauge, nu_field)
    sqE, sqG = np.sqrt(E), np.sqrt(G)
    cu = np.stack([sqE, sqE * g1, sqE * f], axis=-1)     # u-direction coeffs
    cv = np.stack([sqG, sqG * g2, sqG * g], axis=-1)     # v-direction coeffs

    nu_n, nv_n = nu.shape
    du, dv = nu_field.du, nu_field.dv
    us = np.arange(nu_n) * du
    vs = np.arange(nv_n) * dv
    umid = us[:-1] + 0.5 * du
    vmid = vs[:-1] + 0.5 * dv
    spl_u = [RectBivariateSpline(us, vs, cu[:, :, k], kx=3, ky=3) for k in range(3)]
    spl_v = [RectBivariateSpline(us, vs, cv[:, :, k], kx=3, ky=3) for k in range(3)]

    state0 = np.stack([
        np.zeros(3), np.array([1.0, 0.0, 0.0]),
        np.array([0.0, 1.0, 0.0]), np.array([0.0, 0.0, 1.0]),
    ])

    def sweep(u_first: bool):
        pts = np.empty((nu_n, nv_n, 3))
        if u_first:
            # spine along u at v = vs[0], then v-lines from every spine node
            spine = _rk4_line(
                state0, _sample(spl_u, us, vs[:1])[:, 0, :],
                _sample(spl_u, umid, vs[:1])[:, 0, :], du, _rhs_u)
            nodes = _sample(spl_v, us, vs)
            mids = _sample(spl_v, us, vmid)
            for i in range(nu_n):
                line = _rk4_line(spine[i], nodes[i], mids[i], dv, _rhs_v)
                pts[i, :, :] = line[:, 0, :]
        else:
            spine = _rk4_line(
                state0, _sample(spl_v, us[:1], vs)[0],
                _sample(spl_v, us[:1], vmid)[0], dv, _rhs_v)
            nodes = _sample(spl_u, us, vs)
            mids = _sample(spl_u, umid, vs)
            for j in range(nv_n):
                line = _rk4_line(spine[j], nodes[:, j, :], mids[:, j, :],
                                 du, _rhs_u)
                pts[:, j, :] = line[:, 0, :]
        return pts

    pts_a = sweep(True)
    pts_b = sweep(False)
    extent = float(np.max(np.ptp(pts_a.reshape(-1, 3), axis=0))) + 1e-300
    defect = float(np.max(np.linalg.norm(pts_a - pts_b, axis=-1))) / extent
    if defect > compat_tol:
        raise CompatibilityError(
            f"sweep orders disagree by {defect:.3e} of the patch extent: "
            "the data violate the structure equations"
        )
    grid = SurfaceGrid(GridSpec(nu_n, nv_n, 0.0, 0.0, du, dv), pts_a)
    return grid, {"pde_residual_rel": pde_rel, "compat_defect_rel": defect}
