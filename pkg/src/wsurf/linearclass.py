"""Linear relations between curvature invariants and their ten basic classes.

A relation ``delta*K = alpha*H + beta*H' + gamma`` (with discriminant
``alpha^2 - beta^2 + 4*gamma*delta != 0``) is equivalent to a Moebius
(linear-fractional) coupling of the principal curvatures.  Every admissible
relation reduces — by an offset to a parallel surface and/or a similarity —
to exactly one of ten basic classes, each governed by one canonical PDE:

====  =================  =============================================
row   basic relation     PDE (x ~ u, y ~ v)
====  =================  =============================================
1     H = 0              laplace(lam) = -exp(lam)
2     H = 1/2            laplace(lam) = -sinh(lam)
3     H' = 1             laplace_star(exp(nu)) = -2 nu (nu + 2)
4     H = b H', b^2 > 1  laplace_star(nu^b) = -2b(b+1)/(b-1)^2 nu
5     H = b H', b^2 < 1  dalembert_star(nu^b) = same RHS
6     H = b H' + 1, b^2>1  laplace_star(lam^b) = RHS(lam; b)
7     H = b H' + 1, b^2<1  dalembert_star(lam^b) = RHS(lam; b)
8     K = -1             dalembert(lam) = sin(lam),  nu = tan(lam/2)
9     K = 2 H'           laplace_star(exp(lam)) = -2
10    K = b H' + c, c<0  laplace_star(exp(b*I(lam))) = RHS(lam; b, c)
====  =================  =============================================

:func:`classify` walks the reduction tree and reports the row, the basic
parameters, the offset distance and the similarity scale.  A negative
recorded scale means the homothety is composed with a central reflection
(which maps (K, H, H') to (K, -H, H')).  The classification of the
*relation* uses orientation sign eps = +1; realizability of a class by an
actual surface piece (e.g. positive similarity scale for row 3) is a
separate concern noted in the result.

:func:`row_geometry` returns, for each basic row, a concrete Weingarten
pair, the gauge making the canonical PDE exact, the substitution between
the geometric function nu and the table unknown, and the pointwise
multiplier relating the general natural-PDE residual to the table-form
residual.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field

import numpy as np

from .curvature import CurvatureField, ResidualField
from .errors import DegenerateRelationError
from .natural import NaturalGauge
from .pairs import WeingartenPair, cmc_pair, linear_pair, minimal_pair
from .pde import NaturalPDEProblem

__all__ = [
    "LinearRelation", "MoebiusCoeffs", "BasicClassId", "RowGeometry",
    "relation_from_moebius", "moebius_from_relation", "check_relation",
    "fit_relation", "parallel_relation", "classify", "basic_pde",
    "row_geometry", "BASIC_ROWS",
]

_DEGEN_TOL = 1e-12


@dataclass(frozen=True)
class LinearRelation:
    """Coefficients of delta*K = alpha*H + beta*H' + gamma."""

    alpha: float
    beta: float
    gamma: float
    delta: float

    def __post_init__(self):
        if not all(map(math.isfinite, (self.alpha, self.beta, self.gamma, self.delta))):
            raise ValueError("relation coefficients must be finite")
        if abs(self.discriminant) <= _DEGEN_TOL * self.norm2:
            raise DegenerateRelationError(
                f"discriminant {self.discriminant:.3e} vanishes for "
                f"({self.alpha}, {self.beta}, {self.gamma}, {self.delta})"
            )

    @property
    def discriminant(self) -> float:
        return self.alpha ** 2 - self.beta ** 2 + 4.0 * self.gamma * self.delta

    @property
    def norm2(self) -> float:
        return max(self.alpha ** 2, self.beta ** 2,
                   abs(self.gamma * self.delta), self.gamma ** 2,
                   self.delta ** 2, 1e-300)

    def scaled(self, s: float) -> "LinearRelation":
        return LinearRelation(self.alpha * s, self.beta * s,
                              self.gamma * s, self.delta * s)

    def coefficients(self) -> tuple[float, float, float, float]:
        return (self.alpha, self.beta, self.gamma, self.delta)


@dataclass(frozen=True)
class MoebiusCoeffs:
    """nu1 = (A nu2 + B) / (C nu2 + D) with B*C - A*D != 0."""

    A: float
    B: float
    C: float
    D: float

    def __post_init__(self):
        if abs(self.B * self.C - self.A * self.D) <= _DEGEN_TOL * max(
                self.A ** 2, self.B ** 2, self.C ** 2, self.D ** 2, 1e-300):
            raise DegenerateRelationError(
                "B*C - A*D vanishes: coupling degenerates to a constant"
            )

    def apply(self, nu2):
        nu2 = np.asarray(nu2, dtype=float)
        return (self.A * nu2 + self.B) / (self.C * nu2 + self.D)


def relation_from_moebius(m: MoebiusCoeffs) -> LinearRelation:
    """(alpha, beta, gamma, delta) = (A - D, -(A + D), B, C)."""
    return LinearRelation(m.A - m.D, -(m.A + m.D), m.B, m.C)


def moebius_from_relation(rel: LinearRelation) -> MoebiusCoeffs:
    """Inverse of :func:`relation_from_moebius` (A + D fixed by -beta)."""
    return MoebiusCoeffs(
        A=0.5 * (rel.alpha - rel.beta),
        B=rel.gamma,
        C=rel.delta,
        D=-0.5 * (rel.alpha + rel.beta),
    )


def check_relation(curv: CurvatureField, rel: LinearRelation) -> ResidualField:
    """Nodewise residual delta*K - alpha*H - beta*H' - gamma on a field."""
    vals = (rel.delta * curv.K - rel.alpha * curv.H
            - rel.beta * curv.Hprime - rel.gamma)
    return ResidualField.from_values(vals)


def fit_relation(curv: CurvatureField) -> tuple[LinearRelation, float]:
    """Best-fit relation by total least squares over the grid nodes.

    Minimizes |alpha*H + beta*H' + gamma - delta*K| over unit coefficient
    vectors (smallest right singular vector), then rescales so the largest
    coefficient is 1 in absolute value.

    Returns the relation and the rms residual of the fit.
    """
    M = np.column_stack([
        curv.H.ravel(), curv.Hprime.ravel(),
        np.ones(curv.H.size), -curv.K.ravel(),
    ])
    _, svals, vt = np.linalg.svd(M, full_matrices=False)
    coeff = vt[-1]
    k = int(np.argmax(np.abs(coeff)))
    coeff = coeff / coeff[k]
    rel = LinearRelation(*coeff)
    rms = float(svals[-1] / np.sqrt(M.shape[0]))
    return rel, rms


def parallel_relation(
    rel: LinearRelation, a: float, eps: float = 1.0,
    linear_case: bool | None = None,
) -> LinearRelation:
    """Relation satisfied by the parallel surface at offset a.

    The input is normalized first (dividing by delta when delta != 0, else
    by the leading nonzero of alpha, gamma).  For the linear case
    (delta = 0) the offset relation is::

        -a (alpha + a gamma) K = eps (alpha + 2 a gamma) H
                                  + eps beta H' + gamma

    and for the fractional case (delta = 1)::

        (1 - a alpha - a^2 gamma) K = eps (alpha + 2 a gamma) H
                                       + eps beta H' + gamma.

    The discriminant is preserved exactly, so the output is admissible.
    """
    if eps not in (1.0, -1.0, 1, -1):
        raise ValueError("eps must be +-1")
    al, be, ga, de = _normalize(rel)
    if linear_case is None:
        linear_case = de == 0.0
    if linear_case:
        return LinearRelation(
            eps * (al + 2.0 * a * ga), eps * be, ga, -a * (al + a * ga))
    return LinearRelation(
        eps * (al + 2.0 * a * ga), eps * be, ga, 1.0 - a * al - a * a * ga)


def _normalize(rel: LinearRelation) -> tuple[float, float, float, float]:
    """Scale so delta = 1, else alpha = 1, else gamma = 1 (beta-only raises)."""
    al, be, ga, de = rel.coefficients()
    norm = max(abs(al), abs(be), abs(ga), abs(de))
    tol = 1e-14 * norm
    if abs(de) > tol:
        return al / de, be / de, ga / de, 1.0
    if abs(al) > tol:
        return 1.0, be / al, ga / al, 0.0
    if abs(ga) > tol:
        return 0.0, be / ga, 1.0, 0.0
    raise DegenerateRelationError(
        "relation reduces to beta*H' = 0, which forces an umbilic patch"
    )


@dataclass(frozen=True)
class BasicClassId:
    """Result of classification: basic row + reduction data.

    ``offset_a`` is the parallel-offset distance (None when no offset is
    needed), ``scale`` the signed similarity ratio (None when the class is
    scale-free; negative sign = homothety composed with central
    reflection).  ``reduced`` is the basic-row relation the reduction
    arrives at, and ``realizable`` flags classes that contain surfaces
    (row 3 with nonpositive scale has none, since H' > 0).
    """

    row: int
    params: dict = dc_field(default_factory=dict)
    offset_a: float | None = None
    scale: float | None = None
    reduced: LinearRelation | None = None
    realizable: bool = True

    def __post_init__(self):
        if self.row not in range(1, 11):
            raise ValueError(f"row must be 1..10, got {self.row}")
        b = self.params.get("beta")
        c = self.params.get("gamma")
        if self.row == 4 and not (b is not None and b > 1):
            raise ValueError("row 4 needs beta > 1")
        if self.row == 5 and not (b is not None and 0 < b < 1):
            raise ValueError("row 5 needs 0 < beta < 1")
        if self.row == 6 and not (b is not None and b * b > 1):
            raise ValueError("row 6 needs beta^2 > 1")
        if self.row == 7 and not (b is not None and 0 < b * b < 1):
            raise ValueError("row 7 needs 0 < beta^2 < 1")
        if self.row == 10 and not (b is not None and b != 0 and c is not None and c < 0):
            raise ValueError("row 10 needs beta != 0 and gamma < 0")


def _smaller_root(ga: float, al: float) -> float:
    """Root of ga*a^2 + al*a - 1 = 0 with the smaller |a| (stable form).

    The naive (-al +- sq)/(2 ga) cancels catastrophically as ga -> 0, so
    the larger root is taken from the non-cancelling sign and the smaller
    one from the product of roots (-1/ga = r_small * r_large).
    """
    if ga == 0.0:
        return 1.0 / al
    disc = al * al + 4.0 * ga
    sq = math.sqrt(max(disc, 0.0))
    q = -0.5 * (al + math.copysign(sq, al))
    # roots are q/ga and -1/q; |q| is maximal, so -1/q is the smaller one
    return -1.0 / q


def classify(rel: LinearRelation, tol: float = 1e-12) -> BasicClassId:
    """Reduce a relation to its basic row.

    Decision tree (after normalization; eps = +1 throughout):

    * delta = 0 (linear relation):
        - alpha = 0: row 3, similarity scale -gamma/beta;
        - beta = gamma = 0: row 1;
        - gamma = 0: rows 4/5 by p = -beta/alpha (reflection makes p > 0);
        - beta = 0: row 2, signed scale -2 gamma/alpha;
        - else rows 6/7: reflect if needed so the constant is positive,
          then scale it to 1.
    * delta != 0 (normalized to 1):
        - alpha = gamma = 0: row 9, scale |beta|/2 (both signs of beta
          share the canonical PDE);
        - alpha^2 + 4 gamma >= 0: offset by the smaller-|a| root of
          gamma a^2 + alpha a - 1 = 0, then recurse into the linear branch;
        - alpha^2 + 4 gamma < 0: offset a = -alpha/(2 gamma) removes H,
          leaving K = beta' H' + gamma' (gamma' < 0): row 8 when beta' = 0
          (scale 1/sqrt(-gamma')), else row 10.
    """
    al, be, ga, de = _normalize(rel)

    if de == 0.0:
        if al == 0.0:   # normalized gamma = 1
            scale = -1.0 / be
            return BasicClassId(
                row=3, offset_a=None, scale=scale,
                reduced=LinearRelation(0.0, 1.0, -1.0, 0.0),
                realizable=scale > 0,
            )
        # alpha normalized to 1
        small = tol * max(1.0, abs(be), abs(ga))
        p = -be
        c = -ga
        if abs(ga) <= small and abs(be) <= small:
            return BasicClassId(row=1, reduced=LinearRelation(1.0, 0.0, 0.0, 0.0))
        if abs(ga) <= small:
            scale = None if p > 0 else -1.0
            pt = abs(p)
            row = 4 if pt > 1 else 5
            return BasicClassId(
                row=row, params={"beta": pt}, scale=scale,
                reduced=LinearRelation(1.0, -pt, 0.0, 0.0),
            )
        if abs(be) <= small:
            return BasicClassId(
                row=2, scale=2.0 * c,
                reduced=LinearRelation(1.0, 0.0, -0.5, 0.0),
            )
        if c > 0:
            bt, scale = p, c
        else:
            bt, scale = -p, c    # negative scale = reflection * |c|
        row = 6 if bt * bt > 1 else 7
        return BasicClassId(
            row=row, params={"beta": bt}, scale=scale,
            reduced=LinearRelation(1.0, -bt, -1.0, 0.0),
        )

    # fractional branch, delta = 1
    small = tol * max(1.0, abs(al), abs(be), abs(ga))
    if abs(al) <= small and abs(ga) <= small:
        return BasicClassId(
            row=9, scale=abs(be) / 2.0,
            reduced=LinearRelation(0.0, 2.0 * math.copysign(1.0, be), 0.0, 1.0),
        )
    if al * al + 4.0 * ga >= 0.0:
        a_off = _smaller_root(ga, al)
        reduced_rel = parallel_relation(
            LinearRelation(al, be, ga, 1.0), a_off, eps=1.0)
        if reduced_rel.delta != 0.0:
            # the offset kills the K coefficient identically; drop the
            # rounding residue so the recursion enters the linear branch
            reduced_rel = LinearRelation(
                reduced_rel.alpha, reduced_rel.beta, reduced_rel.gamma, 0.0)
        sub = classify(reduced_rel, tol)
        return BasicClassId(
            row=sub.row, params=sub.params, offset_a=a_off,
            scale=sub.scale, reduced=sub.reduced, realizable=sub.realizable,
        )
    # alpha^2 + 4 gamma < 0  (hence gamma < 0)
    a_off = -al / (2.0 * ga) if abs(al) > small else None
    Dt = 1.0 - (a_off or 0.0) * al - (a_off or 0.0) ** 2 * ga
    be_t = be / Dt
    ga_t = ga / Dt
    if abs(be_t) <= small:
        return BasicClassId(
            row=8, offset_a=a_off, scale=1.0 / math.sqrt(-ga_t),
            reduced=LinearRelation(0.0, 0.0, -1.0, 1.0),
        )
    return BasicClassId(
        row=10, params={"beta": be_t, "gamma": ga_t}, offset_a=a_off,
        reduced=LinearRelation(0.0, be_t, ga_t, 1.0),
    )


# ---------------------------------------------------------------------------
# basic-row PDE problems and realizing geometry
# ---------------------------------------------------------------------------

BASIC_ROWS = tuple(range(1, 11))


@dataclass
class RowGeometry:
    """Concrete realization data of one basic row.

    ``multiplier`` m(nu) relates residuals pointwise:
    (natural PDE residual) = m(nu) * (table-form residual), when both are
    evaluated from the same derivative data through the substitution.
    """

    row: int
    params: dict
    pair: WeingartenPair
    gauge: NaturalGauge
    problem: NaturalPDEProblem
    to_unknown: object       # s(nu)
    d_to_unknown: object
    d2_to_unknown: object
    from_unknown: object     # nu(s)
    multiplier: object       # m(nu)


def _identity_pack():
    one = lambda s: np.ones_like(np.asarray(s, dtype=float))
    zero = lambda s: np.zeros_like(np.asarray(s, dtype=float))
    ident = lambda s: np.asarray(s, dtype=float)
    return ident, one, zero


def _power_transform(b: float):
    def w(s):
        return np.asarray(s, dtype=float) ** b

    def dw(s):
        return b * np.asarray(s, dtype=float) ** (b - 1.0)

    def d2w(s):
        return b * (b - 1.0) * np.asarray(s, dtype=float) ** (b - 2.0)

    def inv(t):
        return np.asarray(t, dtype=float) ** (1.0 / b)

    return w, dw, d2w, inv


def basic_pde(row: int, params: dict | None = None) -> NaturalPDEProblem:
    """Canonical PDE problem of a basic row (see module table).

    ``params``: rows 4-7 need {"beta"}, row 10 needs {"beta", "gamma"};
    other rows take none.
    """
    params = dict(params or {})
    ident, one, zero = _identity_pack()
    if row == 1:
        return NaturalPDEProblem(
            operator="laplace",
            rhs=lambda s: -np.exp(s), drhs=lambda s: -np.exp(s),
            substitution="nu = exp(lam)",
            nu_of=lambda s: np.exp(s),
            pde_text="lap(lam) = -exp(lam)", row=1,
        )
    if row == 2:
        return NaturalPDEProblem(
            operator="laplace",
            rhs=lambda s: -np.sinh(s), drhs=lambda s: -np.cosh(s),
            substitution="nu = (1 - exp(lam))/2",
            nu_of=lambda s: 0.5 * (1.0 - np.exp(s)),
            pde_text="lap(lam) = -sinh(lam)", row=2,
        )
    if row == 3:
        expw = (np.exp, np.exp, np.exp, np.log)
        return NaturalPDEProblem(
            operator="laplace_star",
            transform=expw[0], dtransform=expw[1], d2transform=expw[2],
            inverse=expw[3], transform_name="exp",
            rhs=lambda s: -2.0 * s * (s + 2.0),
            drhs=lambda s: -4.0 * (s + 1.0),
            substitution="nu2 = nu (unknown is the geometric function)",
            nu_of=ident,
            pde_text="lap*(exp(nu)) = -2 nu (nu + 2)", row=3,
        )
    if row in (4, 5):
        b = float(params["beta"])
        if row == 4 and not b > 1:
            raise ValueError("row 4 needs beta > 1")
        if row == 5 and not 0 < b < 1:
            raise ValueError("row 5 needs 0 < beta < 1")
        C = 2.0 * b * (b + 1.0) / (b - 1.0) ** 2
        w, dw, d2w, inv = _power_transform(b)
        op = "laplace_star" if row == 4 else "dalembert_star"
        star = "lap*" if row == 4 else "dal*"
        return NaturalPDEProblem(
            operator=op, transform=w, dtransform=dw, d2transform=d2w,
            inverse=inv, transform_name=f"power({b})",
            rhs=lambda s: -C * np.asarray(s, dtype=float),
            drhs=lambda s: np.full_like(np.asarray(s, dtype=float), -C),
            substitution="unknown is nu itself (nu > 0)",
            nu_of=ident, domain=(0.0, np.inf),
            pde_text=f"{star}(nu^{b:g}) = -{C:g} nu",
            row=row, params={"beta": b},
        )
    if row in (6, 7):
        b = float(params["beta"])
        if row == 6 and not b * b > 1:
            raise ValueError("row 6 needs beta^2 > 1")
        if row == 7 and not 0 < b * b < 1:
            raise ValueError("row 7 needs 0 < beta^2 < 1")
        w, dw, d2w, inv = _power_transform(b)

        def rhs(s):
            s = np.asarray(s, dtype=float)
            return -b * ((b * b - 1.0) * s * s + 4.0 * b * s + 4.0) / (
                2.0 * (b - 1.0) * s)

        def drhs(s):
            s = np.asarray(s, dtype=float)
            return -b * ((b * b - 1.0) - 4.0 / (s * s)) / (2.0 * (b - 1.0))

        op = "laplace_star" if row == 6 else "dalembert_star"
        star = "lap*" if row == 6 else "dal*"
        return NaturalPDEProblem(
            operator=op, transform=w, dtransform=dw, d2transform=d2w,
            inverse=inv, transform_name=f"power({b})",
            rhs=rhs, drhs=drhs,
            substitution=f"nu = (({b:g} - 1) lam + 2)/2,  lam = 2 H' > 0",
            nu_of=lambda s: 0.5 * ((b - 1.0) * np.asarray(s, dtype=float) + 2.0),
            domain=(0.0, np.inf),
            pde_text=(f"{star}(lam^{b:g}) = "
                      f"-{b:g}(({b:g}-1)lam+2)(({b:g}+1)lam+2) / (2({b:g}-1)lam)"),
            row=row, params={"beta": b},
        )
    if row == 8:
        return NaturalPDEProblem(
            operator="dalembert",
            rhs=np.sin, drhs=np.cos,
            substitution="nu = tan(lam/2),  lam in (0, pi)",
            nu_of=lambda s: np.tan(0.5 * np.asarray(s, dtype=float)),
            pde_text="dal(lam) = sin(lam)", row=8,
        )
    if row == 9:
        return NaturalPDEProblem(
            operator="laplace_star",
            transform=np.exp, dtransform=np.exp, d2transform=np.exp,
            inverse=np.log, transform_name="exp",
            rhs=lambda s: np.full_like(np.asarray(s, dtype=float), -2.0),
            drhs=lambda s: np.zeros_like(np.asarray(s, dtype=float)),
            substitution="nu = (lam - 4)/(lam - 2),  lam < 2 on the nu > 1 branch",
            nu_of=lambda s: (np.asarray(s, dtype=float) - 4.0)
            / (np.asarray(s, dtype=float) - 2.0),
            pde_text="lap*(exp(lam)) = -2", row=9,
        )
    if row == 10:
        b = float(params["beta"])
        c = float(params["gamma"])
        if b == 0 or c >= 0:
            raise ValueError("row 10 needs beta != 0 and gamma < 0")
        rc = math.sqrt(-c)

        def script_i(s):
            return np.arctan(np.asarray(s, dtype=float) / rc) / rc

        def w(s):
            return np.exp(b * script_i(s))

        def dw(s):
            s = np.asarray(s, dtype=float)
            return b * w(s) / (s * s - c)

        def d2w(s):
            s = np.asarray(s, dtype=float)
            return b * w(s) * (b - 2.0 * s) / (s * s - c) ** 2

        def inv(t):
            return rc * np.tan(rc * np.log(np.asarray(t, dtype=float)) / b)

        def rhs(s):
            s = np.asarray(s, dtype=float)
            return 0.5 * b * c * s * (b * s + 2.0 * c) / (s * s - c)

        def drhs(s):
            s = np.asarray(s, dtype=float)
            return -b * c * c * (s * s + b * s + c) / (s * s - c) ** 2

        return NaturalPDEProblem(
            operator="laplace_star",
            transform=w, dtransform=dw, d2transform=d2w, inverse=inv,
            transform_name=f"exp({b:g} * arctan(lam/{rc:g})/{rc:g})",
            rhs=rhs, drhs=drhs,
            substitution=f"nu = lam + {b / 2:g} (pair parameter), lam = nu1",
            nu_of=lambda s: np.asarray(s, dtype=float) + 0.5 * b,
            pde_text=(f"lap*(exp({b:g} I(lam))) = "
                      f"({b:g}*{c:g}/2) lam ({b:g} lam + {2 * c:g})/(lam^2 - {c:g}),"
                      f"  I = arctan(lam/{rc:g})/{rc:g}"),
            row=10, params={"beta": b, "gamma": c},
        )
    raise ValueError(f"row must be 1..10, got {row}")


def row_geometry(row: int, params: dict | None = None,
                 interval: tuple | None = None,
                 nu0: float | None = None) -> RowGeometry:
    """Concrete pair + gauge + substitution realizing a basic row.

    Defaults pick a comfortable interval for nu and the base value nu0
    where the canonical gauge is exact; both can be overridden.
    """
    params = dict(params or {})
    problem = basic_pde(row, params)
    ident, one, zero = _identity_pack()

    if row == 1:
        iv = interval or (0.05, 5.0)
        n0 = 1.0 if nu0 is None else nu0
        pair = minimal_pair(iv)
        gauge = NaturalGauge(a=math.sqrt(2.0 * n0), b=math.sqrt(2.0 * n0), nu0=n0)
        return RowGeometry(
            row=1, params={}, pair=pair, gauge=gauge, problem=problem,
            to_unknown=np.log,
            d_to_unknown=lambda nu: 1.0 / np.asarray(nu, dtype=float),
            d2_to_unknown=lambda nu: -1.0 / np.asarray(nu, dtype=float) ** 2,
            from_unknown=np.exp,
            multiplier=lambda nu: 2.0 * np.asarray(nu, dtype=float) ** 2,
        )
    if row == 2:
        iv = interval or (-1.0, 0.45)
        n0 = 0.0 if nu0 is None else nu0
        pair = cmc_pair(0.5, iv)
        gauge = NaturalGauge(
            a=math.sqrt(1.0 - 2.0 * n0), b=math.sqrt(1.0 - 2.0 * n0), nu0=n0)
        return RowGeometry(
            row=2, params={}, pair=pair, gauge=gauge, problem=problem,
            to_unknown=lambda nu: np.log(1.0 - 2.0 * np.asarray(nu, dtype=float)),
            d_to_unknown=lambda nu: -2.0 / (1.0 - 2.0 * np.asarray(nu, dtype=float)),
            d2_to_unknown=lambda nu: -4.0 / (1.0 - 2.0 * np.asarray(nu, dtype=float)) ** 2,
            from_unknown=lambda s: 0.5 * (1.0 - np.exp(np.asarray(s, dtype=float))),
            multiplier=lambda nu: 0.5 * (1.0 - 2.0 * np.asarray(nu, dtype=float)) ** 2,
        )
    if row == 3:
        iv = interval or (-4.5, 1.5)
        n0 = 0.0 if nu0 is None else nu0
        pair = linear_pair(1.0, 2.0, iv)
        gauge = NaturalGauge(a=math.exp(0.5 * n0), b=math.exp(-0.5 * n0), nu0=n0)
        return RowGeometry(
            row=3, params={}, pair=pair, gauge=gauge, problem=problem,
            to_unknown=ident, d_to_unknown=one, d2_to_unknown=zero,
            from_unknown=ident,
            multiplier=lambda nu: -np.ones_like(np.asarray(nu, dtype=float)),
        )
    if row in (4, 5):
        b = float(params["beta"])
        iv = interval or (0.1, 3.0)
        n0 = 1.0 if nu0 is None else nu0
        if row == 4:
            ratio = (b + 1.0) / (b - 1.0)
            pair = linear_pair(ratio, 0.0, iv)
            gb = math.sqrt((b - 1.0) / (b + 1.0))
        else:
            ratio = (b + 1.0) / (1.0 - b)
            half_sum = lambda nu, n_0, c=(1.0 + b) / 2.0: c * np.log(np.asarray(nu) / n_0)
            half_dif = lambda nu, n_0, c=(1.0 - b) / 2.0: c * np.log(np.asarray(nu) / n_0)
            pair = WeingartenPair(
                f=lambda nu: ratio * np.asarray(nu, dtype=float),
                g=lambda nu: -np.asarray(nu, dtype=float),
                df=lambda nu: np.full_like(np.asarray(nu, dtype=float), ratio),
                dg=lambda nu: -np.ones_like(np.asarray(nu, dtype=float)),
                d2f=zero, d2g=zero,
                If=half_sum, Ig=half_dif,
                interval=iv, kind=f"row5(beta={b})",
            )
            gb = math.sqrt((1.0 - b) / (1.0 + b))
        gauge = NaturalGauge(
            a=n0 ** ((1.0 + b) / 2.0), b=gb * n0 ** ((1.0 - b) / 2.0), nu0=n0)
        sign = -1.0 if row == 4 else 1.0
        return RowGeometry(
            row=row, params={"beta": b}, pair=pair, gauge=gauge, problem=problem,
            to_unknown=ident, d_to_unknown=one, d2_to_unknown=zero,
            from_unknown=ident,
            multiplier=lambda nu: sign * np.asarray(nu, dtype=float) ** 2 / b,
        )
    if row in (6, 7):
        b = float(params["beta"])
        lam_of = lambda nu: 2.0 * (np.asarray(nu, dtype=float) - 1.0) / (b - 1.0)
        nu_of = lambda s: 0.5 * ((b - 1.0) * np.asarray(s, dtype=float) + 2.0)
        if interval is None:
            interval = (1.05, 3.0) if b > 1 else (-1.0, 0.95)
        lam0 = 1.0 if nu0 is None else float(lam_of(nu0))
        if lam0 <= 0:
            raise ValueError("nu0 must give lam0 = 2(nu0-1)/(beta-1) > 0")
        n0 = float(nu_of(lam0))
        A = (b + 1.0) / (b - 1.0)
        B = -2.0 / (b - 1.0)
        pair = linear_pair(A, B, interval)
        ratio = (b - 1.0) / (b + 1.0) if row == 6 else (1.0 - b) / (1.0 + b)
        gauge = NaturalGauge(
            a=lam0 ** ((1.0 + b) / 2.0),
            b=math.sqrt(ratio) * lam0 ** ((1.0 - b) / 2.0), nu0=n0)
        sign = -1.0 if row == 6 else 1.0
        return RowGeometry(
            row=row, params={"beta": b}, pair=pair, gauge=gauge, problem=problem,
            to_unknown=lam_of,
            d_to_unknown=lambda nu: np.full_like(
                np.asarray(nu, dtype=float), 2.0 / (b - 1.0)),
            d2_to_unknown=zero,
            from_unknown=nu_of,
            multiplier=lambda nu: sign * (b - 1.0) * lam_of(nu) ** 2 / (2.0 * b),
        )
    if row == 8:
        iv = interval or (0.3, 3.0)
        n0 = 1.0 if nu0 is None else nu0

        def If8(nu, n_0):
            nu = np.asarray(nu, dtype=float)
            return 0.5 * np.log((1.0 + nu ** 2) / (1.0 + n_0 ** 2))

        def Ig8(nu, n_0):
            nu = np.asarray(nu, dtype=float)
            return (np.log(np.sqrt(1.0 + nu ** 2) / nu)
                    - np.log(np.sqrt(1.0 + n_0 ** 2) / n_0))

        pair = WeingartenPair(
            f=ident,
            g=lambda nu: -1.0 / np.asarray(nu, dtype=float),
            df=one,
            dg=lambda nu: 1.0 / np.asarray(nu, dtype=float) ** 2,
            d2f=zero,
            d2g=lambda nu: -2.0 / np.asarray(nu, dtype=float) ** 3,
            If=If8, Ig=Ig8, interval=iv, kind="row8",
        )
        s0 = math.sqrt(1.0 + n0 ** 2)
        gauge = NaturalGauge(a=s0, b=s0 / n0, nu0=n0)
        return RowGeometry(
            row=8, params={}, pair=pair, gauge=gauge, problem=problem,
            to_unknown=lambda nu: 2.0 * np.arctan(np.asarray(nu, dtype=float)),
            d_to_unknown=lambda nu: 2.0 / (1.0 + np.asarray(nu, dtype=float) ** 2),
            d2_to_unknown=lambda nu: -4.0 * np.asarray(nu, dtype=float)
            / (1.0 + np.asarray(nu, dtype=float) ** 2) ** 2,
            from_unknown=lambda s: np.tan(0.5 * np.asarray(s, dtype=float)),
            multiplier=lambda nu: -(1.0 + np.asarray(nu, dtype=float) ** 2) ** 2
            / (2.0 * np.asarray(nu, dtype=float) ** 2),
        )
    if row == 9:
        iv = interval or (1.2, 6.0)
        n0 = 2.0 if nu0 is None else nu0

        def If9(nu, n_0):
            nu = np.asarray(nu, dtype=float)
            return (np.log((nu - 1.0) / (n_0 - 1.0))
                    - 1.0 / (nu - 1.0) + 1.0 / (n_0 - 1.0))

        def Ig9(nu, n_0):
            nu = np.asarray(nu, dtype=float)
            return (np.log(((nu - 1.0) / nu) * (n_0 / (n_0 - 1.0)))
                    + 1.0 / (nu - 1.0) - 1.0 / (n_0 - 1.0))

        pair = WeingartenPair(
            f=lambda nu: np.asarray(nu, dtype=float) - 1.0,
            g=lambda nu: 1.0 - 1.0 / np.asarray(nu, dtype=float),
            df=one,
            dg=lambda nu: 1.0 / np.asarray(nu, dtype=float) ** 2,
            d2f=zero,
            d2g=lambda nu: -2.0 / np.asarray(nu, dtype=float) ** 3,
            If=If9, Ig=Ig9, interval=iv, kind="row9",
        )
        # re-base the canonical (nu0 = 2) gauge: a -> a * exp(If(n0)),
        # b -> b * exp(Ig(n0)), which leaves the metric E, G unchanged
        gauge = NaturalGauge(
            a=math.exp(float(If9(n0, 2.0))),
            b=0.5 * math.exp(float(Ig9(n0, 2.0))),
            nu0=n0)
        return RowGeometry(
            row=9, params={}, pair=pair, gauge=gauge, problem=problem,
            to_unknown=lambda nu: 2.0 * (np.asarray(nu, dtype=float) - 2.0)
            / (np.asarray(nu, dtype=float) - 1.0),
            d_to_unknown=lambda nu: 2.0 / (np.asarray(nu, dtype=float) - 1.0) ** 2,
            d2_to_unknown=lambda nu: -4.0 / (np.asarray(nu, dtype=float) - 1.0) ** 3,
            from_unknown=lambda s: (np.asarray(s, dtype=float) - 4.0)
            / (np.asarray(s, dtype=float) - 2.0),
            multiplier=lambda nu: -(np.asarray(nu, dtype=float) - 1.0) ** 4
            / (2.0 * np.asarray(nu, dtype=float) ** 2),
        )
    if row == 10:
        b = float(params["beta"])
        c = float(params["gamma"])
        rc = math.sqrt(-c)
        lam_of = lambda nu: np.asarray(nu, dtype=float) - 0.5 * b
        if interval is None:
            interval = ((0.25 * b, 2.0 * b) if b > 0
                        else (0.1 * abs(b), 2.0 * abs(b)))
        lam0 = (0.0 if b > 0 else abs(b)) if nu0 is None else float(lam_of(nu0))
        n0 = lam0 + 0.5 * b
        if 2.0 * lam0 + b <= 0:
            raise ValueError("nu0 must satisfy 2*lam0 + beta > 0 (nu0 > 0)")

        def script_i(s):
            return np.arctan(np.asarray(s, dtype=float) / rc) / rc

        def If10(nu, n_0):
            lam = lam_of(nu)
            l0 = lam_of(n_0)
            return (0.5 * np.log((lam ** 2 - c) / (l0 ** 2 - c))
                    + 0.5 * b * (script_i(lam) - script_i(l0)))

        def Ig10(nu, n_0):
            lam = lam_of(nu)
            l0 = lam_of(n_0)
            return (-np.log((2.0 * lam + b) / (2.0 * l0 + b))
                    + 0.5 * np.log((lam ** 2 - c) / (l0 ** 2 - c))
                    - 0.5 * b * (script_i(lam) - script_i(l0)))

        pair = WeingartenPair(
            f=lambda nu: np.asarray(nu, dtype=float) - 0.5 * b,
            g=lambda nu: (b * np.asarray(nu, dtype=float) - 0.5 * b * b + 2.0 * c)
            / (2.0 * np.asarray(nu, dtype=float)),
            df=one,
            dg=lambda nu: (b * b - 4.0 * c) / (4.0 * np.asarray(nu, dtype=float) ** 2),
            d2f=zero,
            d2g=lambda nu: -(b * b - 4.0 * c) / (2.0 * np.asarray(nu, dtype=float) ** 3),
            If=If10, Ig=Ig10, interval=interval, kind=f"row10(beta={b},gamma={c})",
        )
        i0 = float(script_i(lam0))
        ga2 = (4.0 / ((-c) * (b * b - 4.0 * c))) * (lam0 ** 2 - c) * math.exp(b * i0)
        gb2 = ((-4.0 / c) * (lam0 ** 2 - c) * math.exp(-b * i0)
               / (2.0 * lam0 + b) ** 2)
        gauge = NaturalGauge(a=math.sqrt(ga2), b=math.sqrt(gb2), nu0=n0)
        return RowGeometry(
            row=10, params={"beta": b, "gamma": c}, pair=pair, gauge=gauge,
            problem=problem,
            to_unknown=lam_of, d_to_unknown=one, d2_to_unknown=zero,
            from_unknown=lambda s: np.asarray(s, dtype=float) + 0.5 * b,
            multiplier=lambda nu: 4.0 * (lam_of(nu) ** 2 - c) ** 2
            / (b * c * (2.0 * lam_of(nu) + b) ** 2),
        )
    raise ValueError(f"row must be 1..10, got {row}")
