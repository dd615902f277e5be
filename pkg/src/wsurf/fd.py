"""Second-order finite-difference stencils on uniform grids.

Central differences in the interior, one-sided second-order stencils on the
boundary rows, so every returned array has the same shape as its input.
Arrays may have trailing component axes (e.g. ``(nu, nv, 3)`` point grids);
``axis`` selects the grid direction being differentiated.
"""
from __future__ import annotations

import numpy as np

__all__ = ["diff1", "diff2", "mixed2", "interior_mask"]


def _moved(values: np.ndarray, axis: int) -> np.ndarray:
    return np.moveaxis(np.asarray(values, dtype=float), axis, 0)


def diff1(values: np.ndarray, h: float, axis: int = 0) -> np.ndarray:
    """First derivative along ``axis`` with spacing ``h``."""
    f = _moved(values, axis)
    if f.shape[0] < 3:
        raise ValueError("need at least 3 samples along the differentiated axis")
    out = np.empty_like(f)
    out[1:-1] = (f[2:] - f[:-2]) / (2.0 * h)
    out[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h)
    out[-1] = (3.0 * f[-1] - 4.0 * f[-2] + f[-3]) / (2.0 * h)
    return np.moveaxis(out, 0, axis)


def diff2(values: np.ndarray, h: float, axis: int = 0) -> np.ndarray:
    """Second derivative along ``axis`` with spacing ``h``."""
    f = _moved(values, axis)
    if f.shape[0] < 4:
        raise ValueError("need at least 4 samples along the differentiated axis")
    out = np.empty_like(f)
    h2 = h * h
    out[1:-1] = (f[2:] - 2.0 * f[1:-1] + f[:-2]) / h2
    out[0] = (2.0 * f[0] - 5.0 * f[1] + 4.0 * f[2] - f[3]) / h2
    out[-1] = (2.0 * f[-1] - 5.0 * f[-2] + 4.0 * f[-3] - f[-4]) / h2
    return np.moveaxis(out, 0, axis)


def mixed2(values: np.ndarray, hu: float, hv: float) -> np.ndarray:
    """Mixed second derivative d2/dudv (axes 0 and 1)."""
    return diff1(diff1(values, hu, axis=0), hv, axis=1)


def interior_mask(shape: tuple[int, int]) -> np.ndarray:
    """Boolean mask that is True strictly inside an (n0, n1) grid."""
    m = np.zeros(shape[:2], dtype=bool)
    m[1:-1, 1:-1] = True
    return m
