"""Discrete curvature analysis of principal-parameter grids.

Given a sampled patch whose parameter lines follow the principal directions
(F = M = 0 up to tolerance), this module computes the fundamental forms, the
principal curvatures ``nu1 = L/E`` (u-direction) and ``nu2 = N/G``
(v-direction), the principal geodesic curvatures::

    gamma1 = -E_v / (2 E sqrt(G)),     gamma2 = G_u / (2 G sqrt(E)),

and the derived invariants K, H, H' = (nu1 - nu2)/2.  The orientation of the
unit normal is normalized so that nu1 - nu2 > 0 on the whole patch: if the
raw difference L/E - N/G is negative everywhere the normal is flipped
(L, M, N negated); a sign change across the patch means the patch contains
umbilics and is rejected.  Channels are never transposed: nu1 always belongs
to the u-direction of the grid as given.

The compatibility residuals check the surface-theory integrability
conditions in first-order form::

    gamma1 = (nu1)_v / (sqrt(G) (nu1 - nu2))
    gamma2 = (nu2)_u / (sqrt(E) (nu1 - nu2))
    Y(gamma1) - X(gamma2) - (gamma1^2 + gamma2^2) = K

with X = (1/sqrt(E)) d/du and Y = (1/sqrt(G)) d/dv.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import fd
from .errors import NotPrincipalError, RegularityError, UmbilicError
from .grid import SurfaceGrid

__all__ = [
    "FormField", "CurvatureField", "ResidualField",
    "first_fundamental_form", "second_fundamental_form", "fundamental_forms",
    "curvature_field", "codazzi_residual", "gauss_residual", "umbilic_scan",
]


@dataclass
class ResidualField:
    """Nodewise residual with interior summary statistics.

    ``max_abs`` and ``l2`` (root mean square) are taken over interior nodes
    only, excluding a margin of up to three nodes per edge: residuals are
    built by differencing quantities that are themselves differences, so a
    few rings near the boundary mix one-sided and reduced-order stencils
    and converge more slowly than the true interior.  The full ``values``
    array (margin included) is kept for inspection.
    """

    values: np.ndarray = field(repr=False)
    max_abs: float = 0.0
    l2: float = 0.0

    @classmethod
    def from_values(cls, values: np.ndarray) -> "ResidualField":
        values = np.asarray(values, dtype=float)
        ti = min(3, (values.shape[0] - 1) // 2)
        tj = min(3, (values.shape[1] - 1) // 2)
        interior = values[ti:values.shape[0] - ti, tj:values.shape[1] - tj]
        return cls(
            values=values,
            max_abs=float(np.max(np.abs(interior))),
            l2=float(np.sqrt(np.mean(interior ** 2))),
        )


@dataclass
class FormField:
    """Coefficients of the fundamental forms on a grid.

    ``E, F, G`` are the first-form coefficients, ``L, M, N`` the second-form
    coefficients (any of which may be ``None`` when only one form has been
    computed).  Spacings are carried along so downstream operations can
    differentiate the coefficients.
    """

    E: np.ndarray | None = None
    F: np.ndarray | None = None
    G: np.ndarray | None = None
    L: np.ndarray | None = None
    M: np.ndarray | None = None
    N: np.ndarray | None = None
    du: float = 0.0
    dv: float = 0.0

    def require_complete(self) -> None:
        for name in ("E", "F", "G", "L", "M", "N"):
            if getattr(self, name) is None:
                raise ValueError(f"form coefficient {name} has not been computed")


@dataclass
class CurvatureField:
    """Principal curvature data on a grid, normalized so nu1 - nu2 > 0."""

    nu1: np.ndarray = field(repr=False)
    nu2: np.ndarray = field(repr=False)
    gamma1: np.ndarray = field(repr=False)
    gamma2: np.ndarray = field(repr=False)
    K: np.ndarray = field(repr=False)
    H: np.ndarray = field(repr=False)
    Hprime: np.ndarray = field(repr=False)
    rho1: np.ndarray = field(repr=False)
    rho2: np.ndarray = field(repr=False)
    du: float = 0.0
    dv: float = 0.0

    def validate(self, rtol: float = 1e-12) -> None:
        """Check the algebraic identities tying the channels together."""
        if np.min(self.nu1 - self.nu2) <= 0:
            raise UmbilicError("nu1 - nu2 is not positive on the whole patch")
        scale = np.maximum(np.abs(self.H), np.abs(self.Hprime)) + 1.0
        hp = np.sqrt(np.maximum(self.H ** 2 - self.K, 0.0))
        if np.max(np.abs(hp - self.Hprime) / scale) > rtol:
            raise ValueError("Hprime does not match sqrt(H^2 - K)")


def first_fundamental_form(grid: SurfaceGrid, eps_reg: float = 1e-10) -> FormField:
    """First fundamental form E, F, G of a sampled patch.

    Raises
    ------
    RegularityError
        If the parameterization is degenerate or E*G - F^2 <= 0 somewhere.
    """
    grid.check_regular(eps_reg)
    zu, zv = grid.partials()
    E = np.einsum("ijk,ijk->ij", zu, zu)
    F = np.einsum("ijk,ijk->ij", zu, zv)
    G = np.einsum("ijk,ijk->ij", zv, zv)
    if np.min(E) <= 0 or np.min(G) <= 0 or np.min(E * G - F * F) <= 0:
        raise RegularityError("first form is not positive definite on the patch")
    return FormField(E=E, F=F, G=G, du=grid.du, dv=grid.dv)


def second_fundamental_form(
    grid: SurfaceGrid, eps_reg: float = 1e-10
) -> tuple[FormField, np.ndarray]:
    """Second fundamental form L, M, N and the unit normal.

    The normal starts as ``z_u x z_v`` normalized and is flipped globally
    when the raw difference ``L/E - N/G`` is negative at every node, so that
    the returned data satisfies nu1 - nu2 > 0 wherever that is achievable by
    an orientation choice.

    Returns
    -------
    (FormField, ndarray)
        Form with L, M, N filled, and the (nu, nv, 3) unit normal field.
    """
    cross = grid.check_regular(eps_reg)
    zu, zv = grid.partials()
    normal = cross / np.linalg.norm(cross, axis=-1, keepdims=True)
    zuu = fd.diff2(grid.points, grid.du, axis=0)
    zvv = fd.diff2(grid.points, grid.dv, axis=1)
    zuv = fd.mixed2(grid.points, grid.du, grid.dv)
    L = np.einsum("ijk,ijk->ij", zuu, normal)
    M = np.einsum("ijk,ijk->ij", zuv, normal)
    N = np.einsum("ijk,ijk->ij", zvv, normal)
    E = np.einsum("ijk,ijk->ij", zu, zu)
    G = np.einsum("ijk,ijk->ij", zv, zv)
    if np.mean(L / E - N / G) < 0:
        L, M, N = -L, -M, -N
        normal = -normal
    out = FormField(L=L, M=M, N=N, du=grid.du, dv=grid.dv)
    return out, normal


def fundamental_forms(
    grid: SurfaceGrid, eps_reg: float = 1e-10
) -> tuple[FormField, np.ndarray]:
    """Both fundamental forms on one FormField, plus the unit normal."""
    first = first_fundamental_form(grid, eps_reg)
    second, normal = second_fundamental_form(grid, eps_reg)
    first.L, first.M, first.N = second.L, second.M, second.N
    return first, normal


def curvature_field(
    forms: FormField,
    tol_principal: float = 1e-6,
    tol_umbilic: float = 1e-8,
    check_umbilic: bool = True,
) -> CurvatureField:
    """Principal curvatures and geodesic curvatures from the forms.

    Parameters
    ----------
    forms : FormField
        Complete set of coefficients (see :func:`fundamental_forms`).
    tol_principal : float
        Relative bound on |F| (against max(E, G)) and |M| (against
        max(|L|, |N|)) before the grid is rejected as non-principal.
    tol_umbilic : float
        Lower bound on nu1 - nu2; nodes below it mean umbilics on the patch.
    check_umbilic : bool
        Set False to skip the umbilic rejection (used by scans over patches
        that are allowed to contain umbilics).

    Raises
    ------
    NotPrincipalError, UmbilicError
    """
    forms.require_complete()
    E, F, G, L, M, N = forms.E, forms.F, forms.G, forms.L, forms.M, forms.N
    first_scale = max(np.max(E), np.max(G))
    second_scale = max(np.max(np.abs(L)), np.max(np.abs(N)), 1e-300)
    # judge principality on interior nodes: one-sided boundary stencils leave
    # O(h^2) noise in F and M even for exactly principal parameterizations,
    # while a genuinely skew parameterization shows O(1) interior values
    core = (slice(1, -1), slice(1, -1))
    if np.max(np.abs(F[core])) > tol_principal * first_scale:
        raise NotPrincipalError(
            f"max|F| = {np.max(np.abs(F[core])):.3e} exceeds "
            f"{tol_principal:.1e} * max(E,G)"
        )
    if np.max(np.abs(M[core])) > tol_principal * second_scale:
        raise NotPrincipalError(
            f"max|M| = {np.max(np.abs(M[core])):.3e} exceeds "
            f"{tol_principal:.1e} * max(|L|,|N|)"
        )

    nu1 = L / E
    nu2 = N / G
    if np.mean(nu1 - nu2) < 0:
        # Orientation not yet normalized (possible when forms were assembled
        # by hand rather than via second_fundamental_form).
        nu1, nu2 = -nu1, -nu2
    diff = nu1 - nu2
    if check_umbilic and np.min(diff) < tol_umbilic:
        raise UmbilicError(
            f"min(nu1 - nu2) = {np.min(diff):.3e} < {tol_umbilic:.1e}: "
            "patch contains (near-)umbilic nodes"
        )

    sqrtE = np.sqrt(E)
    sqrtG = np.sqrt(G)
    Ev = fd.diff1(E, forms.dv, axis=1)
    Gu = fd.diff1(G, forms.du, axis=0)
    gamma1 = -Ev / (2.0 * E * sqrtG)
    gamma2 = Gu / (2.0 * G * sqrtE)

    K = nu1 * nu2
    H = 0.5 * (nu1 + nu2)
    Hprime = 0.5 * diff
    with np.errstate(divide="ignore"):
        rho1 = np.where(nu1 != 0, 1.0 / np.where(nu1 != 0, nu1, 1.0), np.inf)
        rho2 = np.where(nu2 != 0, 1.0 / np.where(nu2 != 0, nu2, 1.0), np.inf)
    return CurvatureField(
        nu1=nu1, nu2=nu2, gamma1=gamma1, gamma2=gamma2,
        K=K, H=H, Hprime=Hprime, rho1=rho1, rho2=rho2,
        du=forms.du, dv=forms.dv,
    )


def codazzi_residual(
    forms: FormField, curv: CurvatureField
) -> tuple[ResidualField, ResidualField]:
    """Residuals of the two first-order compatibility equations.

    Returns the pair (r1, r2) with::

        r1 = gamma1 - (nu1)_v / (sqrt(G) (nu1 - nu2))
        r2 = gamma2 - (nu2)_u / (sqrt(E) (nu1 - nu2))
    """
    forms.require_complete()
    diff = curv.nu1 - curv.nu2
    d1v = fd.diff1(curv.nu1, curv.dv, axis=1)
    d2u = fd.diff1(curv.nu2, curv.du, axis=0)
    r1 = curv.gamma1 - d1v / (np.sqrt(forms.G) * diff)
    r2 = curv.gamma2 - d2u / (np.sqrt(forms.E) * diff)
    return ResidualField.from_values(r1), ResidualField.from_values(r2)


def gauss_residual(forms: FormField, curv: CurvatureField) -> ResidualField:
    """Residual of the curvature equation Y(g1) - X(g2) - (g1^2+g2^2) - K."""
    forms.require_complete()
    sqrtE = np.sqrt(forms.E)
    sqrtG = np.sqrt(forms.G)
    Yg1 = fd.diff1(curv.gamma1, curv.dv, axis=1) / sqrtG
    Xg2 = fd.diff1(curv.gamma2, curv.du, axis=0) / sqrtE
    res = Yg1 - Xg2 - (curv.gamma1 ** 2 + curv.gamma2 ** 2) - curv.K
    return ResidualField.from_values(res)


def umbilic_scan(curv: CurvatureField, tol: float = 1e-8) -> list[tuple[int, int]]:
    """Indices (i, j) of nodes with nu1 - nu2 < tol.

    Build the field with ``check_umbilic=False`` to scan patches that may
    contain umbilics.
    """
    mask = (curv.nu1 - curv.nu2) < tol
    return [(int(i), int(j)) for i, j in zip(*np.nonzero(mask))]
