"""Grid containers and the on-disk formats (native CSV, OBJ, scalar fields)."""
import numpy as np
import pytest

from wsurf import (GridSpec, SurfaceGrid, read_grid, write_grid, write_obj,
                   named_surface)
from wsurf.pde import ScalarField2D, read_field, write_field
from wsurf.errors import ParseError, RegularityError


def small_grid():
    spec = GridSpec(5, 6, 0.0, -1.0, 0.1, 0.2)
    u, v = spec.meshgrid()
    pts = np.stack([u, v, u * v + 0.5], axis=-1)
    return SurfaceGrid(spec, pts)


# -- containers -------------------------------------------------------------

def test_gridspec_axes():
    spec = GridSpec(5, 7, 1.0, 2.0, 0.5, 0.25)
    assert np.allclose(spec.u, 1.0 + 0.5 * np.arange(5))
    assert np.allclose(spec.v, 2.0 + 0.25 * np.arange(7))
    uu, vv = spec.meshgrid()
    assert uu.shape == (5, 7)
    assert np.allclose(uu[:, 0], spec.u)


def test_gridspec_rejects_tiny_or_degenerate():
    with pytest.raises(ValueError):
        GridSpec(4, 5, 0.0, 0.0, 0.1, 0.1)
    with pytest.raises(ValueError):
        GridSpec(5, 5, 0.0, 0.0, 0.0, 0.1)


def test_surface_grid_shape_check():
    spec = GridSpec(5, 6, 0.0, 0.0, 0.1, 0.1)
    with pytest.raises(ValueError):
        SurfaceGrid(spec, np.zeros((6, 5, 3)))
    with pytest.raises(ValueError):
        SurfaceGrid(spec, np.full((5, 6, 3), np.nan))


def test_check_regular_flags_collapsed_grid():
    spec = GridSpec(5, 5, 0.0, 0.0, 0.1, 0.1)
    with pytest.raises(RegularityError):
        SurfaceGrid(spec, np.ones((5, 5, 3))).check_regular()


def test_extent():
    g = small_grid()
    assert g.extent() == pytest.approx(1.0)  # v spans [-1, 0]


# -- native format ----------------------------------------------------------

def test_grid_roundtrip_is_exact(tmp_path):
    g = named_surface("catenoid", spec=GridSpec(9, 9, 1.0, 0.0, 0.1, 0.1))
    path = tmp_path / "g.csv"
    write_grid(path, g)
    back = read_grid(path)
    # repr-based floats survive the trip bit for bit
    assert back.spec == g.spec
    assert np.array_equal(back.points, g.points)


def test_read_grid_parse_errors(tmp_path):
    g = small_grid()
    good = tmp_path / "good.csv"
    write_grid(good, g)
    lines = good.read_text().splitlines()

    def corrupt(name, content):
        p = tmp_path / name
        p.write_text(content)
        with pytest.raises(ParseError):
            read_grid(p)

    corrupt("empty.csv", "")
    corrupt("header.csv", "not json\n" + "\n".join(lines[1:]))
    corrupt("fields.csv", '{"nu": 5}\n' + "\n".join(lines[1:]))
    corrupt("count.csv", "\n".join(lines[:-1]))
    corrupt("parts.csv", "\n".join(lines[:-1] + ["1,2,3"]))
    corrupt("numeric.csv", "\n".join(lines[:-1] + ["4,5,a,b,c"]))
    corrupt("range.csv", "\n".join(lines[:-1] + ["9,5,0.0,0.0,0.0"]))
    # a duplicated row leaves some node unset
    corrupt("missing.csv", "\n".join(lines[:-1] + [lines[1]]))


def test_read_grid_missing_file(tmp_path):
    with pytest.raises(OSError):
        read_grid(tmp_path / "nope.csv")


# -- OBJ export -------------------------------------------------------------

def test_write_obj_counts_and_indices(tmp_path):
    g = small_grid()
    p = tmp_path / "g.obj"
    write_obj(p, g, comment="unit patch")
    lines = p.read_text().splitlines()
    assert lines[0] == "# unit patch"
    vs = [ln for ln in lines if ln.startswith("v ")]
    fs = [ln for ln in lines if ln.startswith("f ")]
    assert len(vs) == 5 * 6
    assert len(fs) == 4 * 5
    # first quad joins vertex 1 to the start of the next i-row (1-based)
    assert fs[0] == "f 1 7 8 2"
    x, y, z = g.points[0, 0]
    assert vs[0] == f"v {x:.9g} {y:.9g} {z:.9g}"


# -- scalar fields ----------------------------------------------------------

def test_field_roundtrip(tmp_path):
    vals = np.linspace(0.0, 1.0, 35).reshape(5, 7) ** 3
    f = ScalarField2D(vals, x0=-1.0, y0=0.5, dx=0.1, dy=0.2)
    p = tmp_path / "f.csv"
    write_field(p, f)
    back = read_field(p)
    assert np.array_equal(back.values, f.values)
    assert (back.x0, back.y0, back.dx, back.dy) == (-1.0, 0.5, 0.1, 0.2)


def test_read_field_bad_header(tmp_path):
    p = tmp_path / "bad.csv"
    p.write_text("garbage\n1,1,0.0\n")
    with pytest.raises(ParseError):
        read_field(p)
