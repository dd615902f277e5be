"""Canonical second-order PDEs of the basic curvature-relation classes.

Four operators act on a scalar field W(x, y) on a uniform rectangle::

    laplace          W_xx + W_yy
    dalembert        W_xx - W_yy
    laplace_star     W_xx + (1/W)_yy
    dalembert_star   W_xx - (1/W)_yy

A :class:`NaturalPDEProblem` packages an operator, the unknown transform
W = w(s) (with derivatives and inverse), and the right-hand side r(s); its
residual on a field is ``Op(w(s)) - r(s)``.  The x axis is identified with
the u direction of surface grids and y with v, so y-independent solutions
are exactly the rotational-surface reductions.

Solvers: damped Newton with sparse LU for the elliptic operators
(Dirichlet data on the boundary ring), and a leapfrog marcher in y for the
hyperbolic ones (initial value and y-derivative on the line y = y0).
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import splu

from .curvature import ResidualField
from .errors import (
    CFLError, DomainError, NonConvergenceError, RangeViolationError,
    ReciprocalSingularityError, UnknownSurfaceError,
)

__all__ = [
    "OPERATORS", "ScalarField2D", "NaturalPDEProblem", "apply_operator",
    "pde_residual", "exact_solution", "harmonic_extension", "solve_elliptic",
    "solve_hyperbolic",
]

OPERATORS = ("laplace", "dalembert", "laplace_star", "dalembert_star")


@dataclass
class ScalarField2D:
    """Scalar samples on a uniform rectangle; axis 0 is x, axis 1 is y."""

    values: np.ndarray = dc_field(repr=False)
    x0: float = 0.0
    y0: float = 0.0
    dx: float = 1.0
    dy: float = 1.0

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)
        if self.values.ndim != 2 or min(self.values.shape) < 5:
            raise ValueError("field must be 2-D, at least 5x5")
        if not (self.dx > 0 and self.dy > 0):
            raise ValueError("spacings must be positive")

    @property
    def nx(self) -> int:
        return self.values.shape[0]

    @property
    def ny(self) -> int:
        return self.values.shape[1]

    @property
    def x(self) -> np.ndarray:
        return self.x0 + self.dx * np.arange(self.nx)

    @property
    def y(self) -> np.ndarray:
        return self.y0 + self.dy * np.arange(self.ny)

    def meshgrid(self):
        return np.meshgrid(self.x, self.y, indexing="ij")

    def like(self, values: np.ndarray) -> "ScalarField2D":
        return ScalarField2D(values, self.x0, self.y0, self.dx, self.dy)


@dataclass
class NaturalPDEProblem:
    """Operator + unknown transform + right-hand side of one basic class.

    ``transform`` maps the table unknown s to the operator argument
    W = w(s); ``inverse`` undoes it (needed by the hyperbolic marcher for
    the star operators).  ``domain`` is the open admissible range of s,
    used for solver range checks.
    """

    operator: str
    rhs: object
    drhs: object
    transform: object = staticmethod(lambda s: s)
    dtransform: object = staticmethod(lambda s: np.ones_like(np.asarray(s, float)))
    d2transform: object = staticmethod(lambda s: np.zeros_like(np.asarray(s, float)))
    inverse: object = staticmethod(lambda w: w)
    transform_name: str = "identity"
    substitution: str = "nu = s"
    nu_of: object | None = None
    pde_text: str = ""
    domain: tuple = (-np.inf, np.inf)
    row: int | None = None
    params: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        if self.operator not in OPERATORS:
            raise ValueError(f"unknown operator {self.operator!r}")

    def check_domain(self, s: np.ndarray) -> None:
        lo, hi = self.domain
        if np.min(s) <= lo or np.max(s) >= hi:
            raise RangeViolationError(
                f"unknown leaves admissible range ({lo}, {hi}): "
                f"[{np.min(s):.6g}, {np.max(s):.6g}]"
            )


def _d2_matrix_1d(n: int, h: float) -> sp.csr_matrix:
    """One-dimensional second-difference matrix on n uniform nodes.

    Interior rows use the 7-point sixth-order stencil; the two rings
    inside the boundary fall back to the fourth- and second-order central
    stencils (their wider neighbours are missing), and the boundary rows
    use the one-sided 4-point formula.  Residual statistics skip the
    reduced-order margin, so the summary accuracy is the interior order.
    """
    if n < 5:
        raise ValueError("second-difference matrix needs at least 5 nodes")
    rows: list[int] = []
    cols: list[int] = []
    vals: list[float] = []

    def put(i, offsets, coeffs):
        for o, c in zip(offsets, coeffs):
            rows.append(i)
            cols.append(i + o)
            vals.append(c)

    one_sided = [2.0, -5.0, 4.0, -1.0]
    c2 = ([-1, 0, 1], [1.0, -2.0, 1.0])
    c4 = ([-2, -1, 0, 1, 2],
          [-1.0 / 12, 16.0 / 12, -30.0 / 12, 16.0 / 12, -1.0 / 12])
    c6 = ([-3, -2, -1, 0, 1, 2, 3],
          [1.0 / 90, -3.0 / 20, 1.5, -49.0 / 18, 1.5, -3.0 / 20, 1.0 / 90])
    put(0, [0, 1, 2, 3], one_sided)
    put(n - 1, [0, -1, -2, -3], one_sided)
    if n >= 7:
        put(1, *c2)
        put(n - 2, *c2)
        put(2, *c4)
        put(n - 3, *c4)
        for i in range(3, n - 3):
            put(i, *c6)
    else:
        for i in range(1, n - 1):
            put(i, *c2)
    A = sp.csr_matrix((vals, (rows, cols)), shape=(n, n))
    return A / (h * h)


def _apply_d2(values: np.ndarray, h: float, axis: int) -> np.ndarray:
    A = _d2_matrix_1d(values.shape[axis], h)
    if axis == 0:
        return np.asarray(A @ values)
    return np.asarray((A @ values.T).T)


#: reciprocal guard for the star operators
EPS_INV = 1e-8


def _op_values(kind: str, W: np.ndarray, dx: float, dy: float) -> np.ndarray:
    Wxx = _apply_d2(W, dx, axis=0)
    if kind in ("laplace", "dalembert"):
        Wyy = _apply_d2(W, dy, axis=1)
    else:
        if np.min(np.abs(W)) < EPS_INV:
            raise ReciprocalSingularityError(
                "1/W undefined: transformed field within "
                f"{EPS_INV:g} of zero")
        Wyy = _apply_d2(1.0 / W, dy, axis=1)
    sign = 1.0 if kind in ("laplace", "laplace_star") else -1.0
    return Wxx + sign * Wyy


def apply_operator(kind: str, field: ScalarField2D) -> ScalarField2D:
    """Apply one of the four canonical operators to field values as-is."""
    if kind not in OPERATORS:
        raise ValueError(f"unknown operator {kind!r}")
    return field.like(_op_values(kind, field.values, field.dx, field.dy))


def pde_residual(problem: NaturalPDEProblem, field: ScalarField2D) -> ResidualField:
    """Nodewise residual Op(w(s)) - r(s) of a candidate solution s."""
    s = field.values
    problem.check_domain(s)
    W = problem.transform(s)
    vals = _op_values(problem.operator, W, field.dx, field.dy) - problem.rhs(s)
    return ResidualField.from_values(vals)


# -- closed-form oracle fields -------------------------------------------

def exact_solution(name: str, *, nx: int, ny: int, dx: float, dy: float,
                   x0: float | None = None, y0: float | None = None,
                   **params) -> ScalarField2D:
    """Named closed-form solutions used as solver oracles.

    ``liouville``      lam = ln 8 - 2 ln(1 + x^2 + y^2)   (laplace, -e^lam)
    ``kink``           lam = 4 arctan(exp(x - shift))     (dalembert, sin lam)
    ``log_parabola``   lam = ln(c - x^2), c default 4     (laplace_star, -2)
    ``zero``           lam = 0
    ``const``          lam = params["value"]

    x defaults to centering the rectangle at 0; y starts at 0 unless given.
    """
    if x0 is None:
        x0 = -0.5 * (nx - 1) * dx
    if y0 is None:
        y0 = 0.0
    xs = x0 + dx * np.arange(nx)
    ys = y0 + dy * np.arange(ny)
    X, Y = np.meshgrid(xs, ys, indexing="ij")
    if name == "liouville":
        vals = np.log(8.0) - 2.0 * np.log1p(X ** 2 + Y ** 2)
    elif name == "kink":
        shift = float(params.get("shift", 0.0))
        vals = 4.0 * np.arctan(np.exp(X - shift))
    elif name == "log_parabola":
        c = float(params.get("c", 4.0))
        if np.max(X ** 2) >= c:
            raise DomainError(f"log_parabola needs x^2 < c = {c}")
        vals = np.log(c - X ** 2)
    elif name == "zero":
        vals = np.zeros_like(X)
    elif name == "const":
        vals = np.full_like(X, float(params["value"]))
    else:
        raise UnknownSurfaceError(f"no exact solution named {name!r}")
    return ScalarField2D(vals, x0=x0, y0=y0, dx=dx, dy=dy)


# -- elliptic solver ------------------------------------------------------

def _grid_ops(nx, ny, dx, dy):
    """Full-grid sparse x/y second-difference operators and interior mask.

    ``Ax``/``Ay`` act on the flattened nx*ny field (C order) with the same
    banded stencils as :func:`apply_operator`; ``interior`` flags the
    non-boundary nodes.  Sharing one operator between residual evaluation
    and Jacobian assembly keeps the Newton solver exactly consistent with
    :func:`pde_residual`.
    """
    Ax = sp.kron(_d2_matrix_1d(nx, dx), sp.eye(ny), format="csr")
    Ay = sp.kron(sp.eye(nx), _d2_matrix_1d(ny, dy), format="csr")
    interior = np.zeros((nx, ny), dtype=bool)
    interior[1:-1, 1:-1] = True
    return Ax, Ay, interior.ravel()


def harmonic_extension(boundary: np.ndarray, dx: float, dy: float) -> np.ndarray:
    """Solve Laplace(u) = 0 with the boundary ring of the given array."""
    b = np.asarray(boundary, dtype=float)
    nx, ny = b.shape
    Ax, Ay, interior = _grid_ops(nx, ny, dx, dy)
    L = (Ax + Ay).tocsr()
    u = b.copy()
    u[1:-1, 1:-1] = 0.0
    # boundary contribution moves to the right-hand side
    rhs = -(L @ u.ravel())[interior]
    A = L[interior][:, interior].tocsc()
    sol = splu(A).solve(rhs)
    out = b.copy()
    out[1:-1, 1:-1] = sol.reshape(nx - 2, ny - 2)
    return out


def solve_elliptic(
    problem: NaturalPDEProblem,
    boundary: ScalarField2D | np.ndarray,
    *,
    dx: float | None = None,
    dy: float | None = None,
    init: np.ndarray | str = "harmonic",
    tol: float = 1e-10,
    rel_update: float = 1e-12,
    max_iter: int = 200,
    max_halvings: int = 30,
) -> tuple[ScalarField2D, dict]:
    """Damped Newton for Op(w(s)) = r(s) with Dirichlet boundary data.

    Converged when the residual max-norm drops below ``tol`` or the
    accepted step is below ``rel_update`` relative to the field size.

    Parameters
    ----------
    boundary :
        Field (or plain array, with dx/dy supplied) whose boundary ring
        fixes s there; its interior is ignored.
    init :
        Full starting array, or "harmonic" to start from the harmonic
        extension of the boundary ring, or "boundary-mean" for a constant.

    Returns
    -------
    (ScalarField2D, dict)
        Solution field and an info dict with ``iterations``,
        ``residual_history`` (max-norm after each step) and ``converged``.

    Raises
    ------
    NonConvergenceError, RangeViolationError
    """
    if problem.operator not in ("laplace", "laplace_star"):
        raise ValueError(f"solve_elliptic needs an elliptic operator, got {problem.operator}")
    if isinstance(boundary, ScalarField2D):
        geo = boundary
        bvals = boundary.values
    else:
        if dx is None or dy is None:
            raise ValueError("plain-array boundary needs dx and dy")
        geo = ScalarField2D(np.asarray(boundary, dtype=float), dx=dx, dy=dy)
        bvals = geo.values
    nx, ny = bvals.shape
    star = problem.operator == "laplace_star"

    if isinstance(init, str):
        if init == "harmonic":
            s = harmonic_extension(bvals, geo.dx, geo.dy)
        elif init == "boundary-mean":
            s = bvals.copy()
            ring = np.concatenate([bvals[0], bvals[-1], bvals[1:-1, 0], bvals[1:-1, -1]])
            s[1:-1, 1:-1] = np.mean(ring)
        else:
            raise ValueError(f"unknown init {init!r}")
    else:
        s = np.asarray(init, dtype=float).copy()
        s[0], s[-1], s[:, 0], s[:, -1] = bvals[0], bvals[-1], bvals[:, 0], bvals[:, -1]
    problem.check_domain(s)

    Ax, Ay, interior = _grid_ops(nx, ny, geo.dx, geo.dy)

    def residual(full):
        W = problem.transform(full)
        return _op_values(problem.operator, W, geo.dx, geo.dy)[1:-1, 1:-1] \
            - problem.rhs(full[1:-1, 1:-1])

    def in_range(full):
        lo, hi = problem.domain
        return np.min(full) > lo and np.max(full) < hi

    F = residual(s)
    history = [float(np.max(np.abs(F)))]
    iterations = 0
    while history[-1] > tol and iterations < max_iter:
        sf = s.ravel()
        wp = problem.dtransform(sf)
        rp = problem.drhs(sf[interior])
        if star:
            w = problem.transform(sf)
            Jfull = Ax @ sp.diags(wp) - Ay @ sp.diags(wp / w ** 2)
        else:
            Jfull = (Ax + Ay) @ sp.diags(wp)
        # boundary values are fixed, so only interior rows and columns enter
        J = Jfull[interior][:, interior] - sp.diags(rp)
        try:
            delta = splu(J.tocsc()).solve(-F.ravel())
        except RuntimeError as exc:
            raise NonConvergenceError(f"Jacobian factorization failed: {exc}", history)
        step = np.zeros_like(s)
        step[1:-1, 1:-1] = delta.reshape(nx - 2, ny - 2)

        t, accepted = 1.0, False
        for _ in range(max_halvings + 1):
            cand = s + t * step
            if in_range(cand):
                try:
                    Fc = residual(cand)
                except RangeViolationError:
                    Fc = None
                if Fc is not None and np.max(np.abs(Fc)) < history[-1]:
                    s, F = cand, Fc
                    accepted = True
                    break
            t *= 0.5
        iterations += 1
        if not accepted:
            if not in_range(s + t * step):
                raise RangeViolationError(
                    "damped step cannot stay inside the admissible range"
                )
            raise NonConvergenceError(
                f"line search stalled at iteration {iterations}", history
            )
        history.append(float(np.max(np.abs(F))))
        if np.max(np.abs(t * step)) <= rel_update * max(1.0, np.max(np.abs(s))):
            break

    if history[-1] > tol and iterations >= max_iter:
        raise NonConvergenceError(
            f"Newton did not reach tol={tol:.1e} in {max_iter} iterations", history
        )
    info = {"iterations": iterations, "residual_history": history,
            "converged": True}
    return geo.like(s), info


# -- hyperbolic solver ----------------------------------------------------

def _second_x(V: np.ndarray, dx: float, periodic: bool) -> np.ndarray:
    if periodic:
        return (np.roll(V, -1, axis=0) - 2.0 * V + np.roll(V, 1, axis=0)) / (dx * dx)
    out = np.empty_like(V)
    out[1:-1] = (V[2:] - 2.0 * V[1:-1] + V[:-2]) / (dx * dx)
    out[0] = out[1]
    out[-1] = out[-2]
    return out


def solve_hyperbolic(
    problem: NaturalPDEProblem,
    initial: np.ndarray,
    initial_deriv: np.ndarray,
    *,
    dx: float,
    dy: float,
    y_max: float,
    x0: float = 0.0,
    y0: float = 0.0,
    x_boundary: str = "outflow",
) -> ScalarField2D:
    """Leapfrog marcher in y for the hyperbolic operators.

    For ``dalembert`` the field s itself is advanced
    (s_yy = s_xx - r); for ``dalembert_star`` the reciprocal transformed
    variable V = 1/w(s) is advanced (V_yy = w(s)_xx - r(s)) and mapped back
    through the inverse transform.  x boundaries are zero-gradient
    ("outflow") or periodic.

    Raises
    ------
    CFLError
        If dy > dx.
    """
    if problem.operator not in ("dalembert", "dalembert_star"):
        raise ValueError(f"solve_hyperbolic needs a hyperbolic operator, got {problem.operator}")
    if dy > dx * (1.0 + 1e-12):
        raise CFLError(f"marching step dy={dy} exceeds dx={dx}")
    if x_boundary not in ("outflow", "periodic"):
        raise ValueError(f"unknown x boundary {x_boundary!r}")
    periodic = x_boundary == "periodic"

    s0 = np.asarray(initial, dtype=float)
    sy0 = np.asarray(initial_deriv, dtype=float)
    if s0.shape != sy0.shape or s0.ndim != 1:
        raise ValueError("initial value and derivative must be matching 1-D arrays")
    problem.check_domain(s0)
    ny = int(np.floor(y_max / dy + 0.5)) + 1
    if ny < 5:
        raise ValueError("y_max/dy must give at least 5 levels")
    star = problem.operator == "dalembert_star"

    out = np.empty((len(s0), ny))
    out[:, 0] = s0

    if star:
        w0 = problem.transform(s0)
        V_prev = 1.0 / w0
        Vy0 = -problem.dtransform(s0) * sy0 / w0 ** 2

        def accel(V, s):
            return _second_x(1.0 / V, dx, periodic) - problem.rhs(s)

        def to_s(V):
            if np.min(np.abs(V)) < 1e-300:
                raise RangeViolationError("reciprocal variable hit zero")
            return problem.inverse(1.0 / V)

        V_cur = V_prev + dy * Vy0 + 0.5 * dy * dy * accel(V_prev, s0)
        out[:, 1] = to_s(V_cur)
        for n in range(2, ny):
            V_next = 2.0 * V_cur - V_prev + dy * dy * accel(V_cur, out[:, n - 1])
            if not periodic:
                V_next[0] = V_next[1]
                V_next[-1] = V_next[-2]
            V_prev, V_cur = V_cur, V_next
            out[:, n] = to_s(V_cur)
    else:
        def accel(s):
            return _second_x(s, dx, periodic) - problem.rhs(s)

        s_prev = s0
        s_cur = s0 + dy * sy0 + 0.5 * dy * dy * accel(s0)
        out[:, 1] = s_cur
        for n in range(2, ny):
            s_next = 2.0 * s_cur - s_prev + dy * dy * accel(s_cur)
            if not periodic:
                s_next[0] = s_next[1]
                s_next[-1] = s_next[-2]
            s_prev, s_cur = s_cur, s_next
            out[:, n] = s_cur
    problem.check_domain(out)
    return ScalarField2D(out, x0=x0, y0=y0, dx=dx, dy=dy)


# ---------------------------------------------------------------------------
# one-dimensional exemplars and field files
# ---------------------------------------------------------------------------

def ode_exemplar(problem: NaturalPDEProblem, s0: float, ds0: float,
                 nx: int, dx: float, ny: int = 9, dy: float = 0.01,
                 x0: float = 0.0, y0: float = 0.0) -> ScalarField2D:
    """y-independent solution of the problem, extended constantly in y.

    For a y-independent field every operator reduces to (w(s))_xx, so the
    PDE collapses to the ODE  w'(s) s'' + w''(s) (s')^2 = r(s), integrated
    by RK4 from (s0, ds0).  This is exactly the rotational reduction.
    """
    s = np.empty(nx)
    v = np.empty(nx)
    s[0], v[0] = s0, ds0

    def rhs(state):
        si, vi = state
        wp = float(problem.dtransform(si))
        if abs(wp) < 1e-14:
            raise RangeViolationError("transform derivative vanished during ODE")
        acc = (float(problem.rhs(si)) - float(problem.d2transform(si)) * vi * vi) / wp
        return np.array([vi, acc])

    for k in range(nx - 1):
        st = np.array([s[k], v[k]])
        k1 = rhs(st)
        k2 = rhs(st + 0.5 * dx * k1)
        k3 = rhs(st + 0.5 * dx * k2)
        k4 = rhs(st + dx * k3)
        st = st + (dx / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        s[k + 1], v[k + 1] = st
    field = np.repeat(s[:, None], ny, axis=1)
    problem.check_domain(field)
    return ScalarField2D(field, x0=x0, y0=y0, dx=dx, dy=dy)


def write_field(path, field: ScalarField2D) -> None:
    """JSON header line {nx,ny,x0,y0,dx,dy} + CSV rows ``i,j,value``."""
    import json

    header = {"nx": field.nx, "ny": field.ny, "x0": field.x0,
              "y0": field.y0, "dx": field.dx, "dy": field.dy}
    with open(path, "w") as fh:
        fh.write(json.dumps(header) + "\n")
        for i in range(field.nx):
            for j in range(field.ny):
                fh.write(f"{i},{j},{float(field.values[i, j])!r}\n")


def read_field(path) -> ScalarField2D:
    """Inverse of :func:`write_field`; :class:`ParseError` on bad content."""
    import json

    from .errors import ParseError

    with open(path) as fh:
        first = fh.readline()
        try:
            header = json.loads(first)
            nx, ny = int(header["nx"]), int(header["ny"])
            x0, y0 = float(header["x0"]), float(header["y0"])
            dx, dy = float(header["dx"]), float(header["dy"])
        except (ValueError, KeyError, TypeError) as exc:
            raise ParseError(f"bad field header: {exc}") from None
        values = np.full((nx, ny), np.nan)
        for lineno, line in enumerate(fh, start=2):
            line = line.strip()
            if not line:
                continue
            parts = line.split(",")
            if len(parts) != 3:
                raise ParseError(f"line {lineno}: expected i,j,value")
            try:
                i, j = int(parts[0]), int(parts[1])
                values[i, j] = float(parts[2])
            except (ValueError, IndexError) as exc:
                raise ParseError(f"line {lineno}: {exc}") from None
    if np.any(np.isnan(values)):
        raise ParseError("field file is missing nodes")
    return ScalarField2D(values, x0=x0, y0=y0, dx=dx, dy=dy)
