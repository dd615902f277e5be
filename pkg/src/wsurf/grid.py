"""Parametric surface grids and their on-disk formats.

A surface patch is sampled on a uniform parameter rectangle::

    u_i = u0 + i*du   (i = 0..nu-1)
    v_j = v0 + j*dv   (j = 0..nv-1)

with one 3-vector per node.  The native file format is a single text file:
first line a JSON header ``{"nu":..,"nv":..,"u0":..,"v0":..,"du":..,"dv":..}``,
then one CSV row ``i,j,x,y,z`` per node, row-major in ``i``.  Grids can also
be exported as Wavefront OBJ quad meshes for inspection.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .errors import ParseError, RegularityError
from . import fd

__all__ = ["GridSpec", "SurfaceGrid", "read_grid", "write_grid", "write_obj"]


@dataclass(frozen=True)
class GridSpec:
    """Uniform parameter rectangle: node counts, origin and spacings."""

    nu: int
    nv: int
    u0: float
    v0: float
    du: float
    dv: float

    def __post_init__(self):
        if self.nu < 5 or self.nv < 5:
            raise ValueError(f"grid must be at least 5x5, got {self.nu}x{self.nv}")
        if not (self.du > 0 and self.dv > 0):
            raise ValueError("grid spacings must be positive")

    @property
    def u(self) -> np.ndarray:
        return self.u0 + self.du * np.arange(self.nu)

    @property
    def v(self) -> np.ndarray:
        return self.v0 + self.dv * np.arange(self.nv)

    def meshgrid(self) -> tuple[np.ndarray, np.ndarray]:
        """(nu, nv) coordinate arrays with u varying along axis 0."""
        return np.meshgrid(self.u, self.v, indexing="ij")


@dataclass
class SurfaceGrid:
    """Sampled parametric surface patch.

    Parameters
    ----------
    spec : GridSpec
        Parameter rectangle.
    points : ndarray, shape (nu, nv, 3)
        Node positions; ``points[i, j]`` sits at parameter ``(u_i, v_j)``.

    Notes
    -----
    Regularity (``|z_u x z_v| > eps``) is enforced by the fundamental-form
    operations rather than at construction, because it needs the same
    difference stencils those operations use.
    """

    spec: GridSpec
    points: np.ndarray = field(repr=False)

    def __post_init__(self):
        self.points = np.asarray(self.points, dtype=float)
        expected = (self.spec.nu, self.spec.nv, 3)
        if self.points.shape != expected:
            raise ValueError(
                f"points shape {self.points.shape} does not match grid {expected}"
            )
        if not np.all(np.isfinite(self.points)):
            raise ValueError("points contain non-finite values")

    @property
    def nu(self) -> int:
        return self.spec.nu

    @property
    def nv(self) -> int:
        return self.spec.nv

    @property
    def du(self) -> float:
        return self.spec.du

    @property
    def dv(self) -> float:
        return self.spec.dv

    def partials(self) -> tuple[np.ndarray, np.ndarray]:
        """First partials (z_u, z_v) by second-order differences."""
        zu = fd.diff1(self.points, self.du, axis=0)
        zv = fd.diff1(self.points, self.dv, axis=1)
        return zu, zv

    def check_regular(self, eps_reg: float = 1e-10) -> np.ndarray:
        """Return the unit-normal-scaled cross product, raising if degenerate.

        Raises
        ------
        RegularityError
            If ``|z_u x z_v| <= eps_reg`` at any node.
        """
        zu, zv = self.partials()
        cross = np.cross(zu, zv)
        norms = np.linalg.norm(cross, axis=-1)
        if np.min(norms) <= eps_reg:
            i, j = np.unravel_index(np.argmin(norms), norms.shape)
            raise RegularityError(
                f"|z_u x z_v| = {norms[i, j]:.3e} <= {eps_reg:.1e} at node ({i}, {j})"
            )
        return cross

    def extent(self) -> float:
        """Diameter-like scale: max coordinate range over the patch."""
        return float(np.max(self.points.max(axis=(0, 1)) - self.points.min(axis=(0, 1))))


def write_grid(path, grid: SurfaceGrid) -> None:
    """Write a grid in the native JSON-header + CSV-body format."""
    s = grid.spec
    header = {"nu": s.nu, "nv": s.nv, "u0": s.u0, "v0": s.v0, "du": s.du, "dv": s.dv}
    with open(path, "w") as fh:
        fh.write(json.dumps(header) + "\n")
        for i in range(s.nu):
            for j in range(s.nv):
                x, y, z = (float(c) for c in grid.points[i, j])
                fh.write(f"{i},{j},{x!r},{y!r},{z!r}\n")


def read_grid(path) -> SurfaceGrid:
    """Read a grid written by :func:`write_grid`.

    Raises
    ------
    ParseError
        On malformed headers, bad node counts, or non-numeric rows.
    """
    with open(path) as fh:
        lines = [ln.strip() for ln in fh if ln.strip()]
    if not lines:
        raise ParseError(f"{path}: empty grid file")
    try:
        header = json.loads(lines[0])
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: bad JSON header: {exc}") from exc
    try:
        spec = GridSpec(
            nu=int(header["nu"]), nv=int(header["nv"]),
            u0=float(header["u0"]), v0=float(header["v0"]),
            du=float(header["du"]), dv=float(header["dv"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"{path}: bad header fields: {exc}") from exc
    body = lines[1:]
    if len(body) != spec.nu * spec.nv:
        raise ParseError(
            f"{path}: expected {spec.nu * spec.nv} node rows, got {len(body)}"
        )
    points = np.empty((spec.nu, spec.nv, 3))
    seen = np.zeros((spec.nu, spec.nv), dtype=bool)
    for ln in body:
        parts = ln.split(",")
        if len(parts) != 5:
            raise ParseError(f"{path}: bad row {ln!r}")
        try:
            i, j = int(parts[0]), int(parts[1])
            xyz = [float(p) for p in parts[2:]]
        except ValueError as exc:
            raise ParseError(f"{path}: non-numeric row {ln!r}") from exc
        if not (0 <= i < spec.nu and 0 <= j < spec.nv):
            raise ParseError(f"{path}: index ({i},{j}) outside grid")
        points[i, j] = xyz
        seen[i, j] = True
    if not seen.all():
        raise ParseError(f"{path}: {int((~seen).sum())} node rows missing")
    return SurfaceGrid(spec, points)


def write_obj(path, grid: SurfaceGrid, comment: str | None = None) -> None:
    """Export the grid as a Wavefront OBJ quad mesh.

    Vertices are written row-major in ``i``; each parameter cell becomes one
    quad face (1-based indices, counter-clockwise in (u, v)).
    """
    s = grid.spec
    with open(path, "w") as fh:
        if comment:
            fh.write(f"# {comment}\n")
        for i in range(s.nu):
            for j in range(s.nv):
                x, y, z = grid.points[i, j]
                fh.write(f"v {x:.9g} {y:.9g} {z:.9g}\n")
        for i in range(s.nu - 1):
            for j in range(s.nv - 1):
                a = i * s.nv + j + 1
                b = (i + 1) * s.nv + j + 1
                c = (i + 1) * s.nv + j + 2
                d = i * s.nv + j + 2
                fh.write(f"f {a} {b} {c} {d}\n")
