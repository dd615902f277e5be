"""Weingarten pairs: principal curvatures as functions of one parameter.

A pair is two smooth functions (f, g) on an interval I with f - g != 0 and
f'*g' != 0 throughout; a surface realizes the pair when nu1 = f(nu) and
nu2 = g(nu) for a scalar field nu.  The two associated integrals::

    If(nu) = int_{nu0}^{nu} f'/(f-g),      Ig(nu) = int_{nu0}^{nu} g'/(g-f)

drive everything downstream (natural metrics, the natural PDE, parallel
transforms).  Built-in kinds: ``minimal``, ``cmc``, ``linear``,
``linear-fractional`` and ``custom-table`` (cubic splines through samples);
the first three carry closed-form integrals, the rest use adaptive
quadrature.
"""
from __future__ import annotations

import numpy as np
from scipy.interpolate import CubicSpline

from .errors import DomainError
from .quadrature import cumulative_at

__all__ = [
    "WeingartenPair", "minimal_pair", "cmc_pair", "linear_pair",
    "fractional_pair", "table_pair", "pair_from_spec", "pair_to_spec",
]

_SAMPLES = 1001          # pair admissibility is checked on this many nodes
_MIN_SEPARATION = 1e-10  # lower bound for |f - g| on the interval
_MIN_SLOPE = 1e-12       # lower bound for |f' * g'| on the interval


class WeingartenPair:
    """Pair (f, g) on an interval, with derivatives and integrals.

    Derivatives not supplied analytically are synthesized by second-order
    differences with step ``1e-5 * |I|``.  Closed-form integrals, when
    available, are functions ``(nu, nu0) -> value`` and are preferred over
    quadrature.
    """

    def __init__(self, f, g, interval, df=None, dg=None, d2f=None, d2g=None,
                 If=None, Ig=None, kind="custom", params=None):
        self.kind = kind
        self.params = dict(params or {})
        lo, hi = float(interval[0]), float(interval[1])
        if not lo < hi:
            raise ValueError(f"empty pair interval [{lo}, {hi}]")
        self.interval = (lo, hi)
        self._f, self._g = f, g
        h = 1e-5 * (hi - lo)
        self._df = df if df is not None else self._make_d1(f, h)
        self._dg = dg if dg is not None else self._make_d1(g, h)
        self._d2f = d2f if d2f is not None else self._make_d2(f, h)
        self._d2g = d2g if d2g is not None else self._make_d2(g, h)
        self._If = If
        self._Ig = Ig
        self.validate()

    # -- derivative synthesis ------------------------------------------

    def _shift_into(self, nu, h):
        lo, hi = self.interval
        return np.clip(nu, lo + h, hi - h)

    def _make_d1(self, fun, h):
        def d1(nu):
            x = self._shift_into(np.asarray(nu, dtype=float), h)
            return (fun(x + h) - fun(x - h)) / (2.0 * h)
        return d1

    def _make_d2(self, fun, h):
        def d2(nu):
            x = self._shift_into(np.asarray(nu, dtype=float), h)
            return (fun(x + h) - 2.0 * fun(x) + fun(x - h)) / (h * h)
        return d2

    # -- checked evaluation --------------------------------------------

    def check_domain(self, nu):
        nu = np.asarray(nu, dtype=float)
        lo, hi = self.interval
        pad = 1e-12 * (hi - lo)
        if np.min(nu) < lo - pad or np.max(nu) > hi + pad:
            raise DomainError(
                f"nu range [{np.min(nu):.6g}, {np.max(nu):.6g}] leaves the "
                f"pair interval [{lo:.6g}, {hi:.6g}]"
            )
        return nu

    def f(self, nu):
        return self._f(self.check_domain(nu))

    def g(self, nu):
        return self._g(self.check_domain(nu))

    def df(self, nu):
        return self._df(self.check_domain(nu))

    def dg(self, nu):
        return self._dg(self.check_domain(nu))

    def d2f(self, nu):
        return self._d2f(self.check_domain(nu))

    def d2g(self, nu):
        return self._d2g(self.check_domain(nu))

    def separation(self, nu):
        """f - g, the quantity 2*H' of a realizing surface."""
        nu = self.check_domain(nu)
        return self._f(nu) - self._g(nu)

    # -- admissibility --------------------------------------------------

    def validate(self):
        lo, hi = self.interval
        nu = np.linspace(lo, hi, _SAMPLES)
        sep = self._f(nu) - self._g(nu)
        # a sign change between samples is an umbilic crossing even when
        # every sampled |f - g| looks comfortably nonzero
        if (not np.all(np.isfinite(sep))
                or np.min(np.abs(sep)) <= _MIN_SEPARATION
                or np.min(sep) * np.max(sep) < 0.0):
            raise DomainError(
                f"|f - g| reaches {np.min(np.abs(sep)):.3e} or changes sign "
                f"on [{lo:.6g}, {hi:.6g}]; pair is not admissible there"
            )
        slope = self._df(nu) * self._dg(nu)
        if (not np.all(np.isfinite(slope))
                or np.min(np.abs(slope)) <= _MIN_SLOPE
                or np.min(slope) * np.max(slope) < 0.0):
            raise DomainError(
                f"|f'*g'| reaches {np.min(np.abs(slope)):.3e} or changes sign "
                f"on [{lo:.6g}, {hi:.6g}]; pair is not admissible there"
            )

    # -- integrals -------------------------------------------------------

    def If(self, nu, nu0, tol=1e-10):
        """int_{nu0}^{nu} f'/(f-g), elementwise over ``nu``."""
        self.check_domain(nu0)
        nu = self.check_domain(nu)
        if self._If is not None:
            return np.asarray(self._If(nu, nu0), dtype=float)
        integrand = lambda t: self._df(t) / (self._f(t) - self._g(t))
        return cumulative_at(integrand, float(nu0), nu, tol=tol)

    def Ig(self, nu, nu0, tol=1e-10):
        """int_{nu0}^{nu} g'/(g-f), elementwise over ``nu``."""
        self.check_domain(nu0)
        nu = self.check_domain(nu)
        if self._Ig is not None:
            return np.asarray(self._Ig(nu, nu0), dtype=float)
        integrand = lambda t: self._dg(t) / (self._g(t) - self._f(t))
        return cumulative_at(integrand, float(nu0), nu, tol=tol)


# -- built-in kinds ------------------------------------------------------

def minimal_pair(interval=(1e-3, 10.0)) -> WeingartenPair:
    """f = nu, g = -nu on nu > 0 (mean curvature zero)."""
    half_log = lambda nu, nu0: 0.5 * np.log(np.asarray(nu) / nu0)
    return WeingartenPair(
        f=lambda nu: np.asarray(nu, dtype=float),
        g=lambda nu: -np.asarray(nu, dtype=float),
        df=lambda nu: np.ones_like(np.asarray(nu, dtype=float)),
        dg=lambda nu: -np.ones_like(np.asarray(nu, dtype=float)),
        d2f=lambda nu: np.zeros_like(np.asarray(nu, dtype=float)),
        d2g=lambda nu: np.zeros_like(np.asarray(nu, dtype=float)),
        If=half_log, Ig=half_log,
        interval=interval, kind="minimal",
    )


def cmc_pair(H: float = 0.5, interval=None) -> WeingartenPair:
    """f = 2H - nu, g = nu below the umbilic value nu = H."""
    if interval is None:
        interval = (H - 1.0, H - 1e-2)
    log_ratio = lambda nu, nu0: 0.5 * np.log((H - np.asarray(nu)) / (H - nu0))
    return WeingartenPair(
        f=lambda nu: 2.0 * H - np.asarray(nu, dtype=float),
        g=lambda nu: np.asarray(nu, dtype=float),
        df=lambda nu: -np.ones_like(np.asarray(nu, dtype=float)),
        dg=lambda nu: np.ones_like(np.asarray(nu, dtype=float)),
        d2f=lambda nu: np.zeros_like(np.asarray(nu, dtype=float)),
        d2g=lambda nu: np.zeros_like(np.asarray(nu, dtype=float)),
        If=log_ratio, Ig=log_ratio,
        interval=interval, kind="cmc", params={"H": H},
    )


def linear_pair(A: float, B: float, interval) -> WeingartenPair:
    """f = A*nu + B, g = nu (A != 0; f - g nonzero on the interval)."""
    if A == 0:
        raise DomainError("linear pair needs A != 0 (f' would vanish)")

    if A == 1.0:
        If = lambda nu, nu0: (np.asarray(nu) - nu0) * (1.0 / B)
        Ig = lambda nu, nu0: -(np.asarray(nu) - nu0) * (1.0 / B)
    else:
        def If(nu, nu0):
            return (A / (A - 1.0)) * np.log(
                ((A - 1.0) * np.asarray(nu) + B) / ((A - 1.0) * nu0 + B)
            )

        def Ig(nu, nu0):
            return (-1.0 / (A - 1.0)) * np.log(
                ((A - 1.0) * np.asarray(nu) + B) / ((A - 1.0) * nu0 + B)
            )

    return WeingartenPair(
        f=lambda nu: A * np.asarray(nu, dtype=float) + B,
        g=lambda nu: np.asarray(nu, dtype=float),
        df=lambda nu: np.full_like(np.asarray(nu, dtype=float), A),
        dg=lambda nu: np.ones_like(np.asarray(nu, dtype=float)),
        d2f=lambda nu: np.zeros_like(np.asarray(nu, dtype=float)),
        d2g=lambda nu: np.zeros_like(np.asarray(nu, dtype=float)),
        If=If, Ig=Ig,
        interval=interval, kind="linear", params={"A": A, "B": B},
    )


def fractional_pair(A: float, B: float, C: float, D: float, interval) -> WeingartenPair:
    """f = (A*nu + B)/(C*nu + D), g = nu (B*C - A*D != 0)."""
    if B * C - A * D == 0:
        raise DomainError("fractional pair needs B*C - A*D != 0 (f' would vanish)")

    def f(nu):
        nu = np.asarray(nu, dtype=float)
        return (A * nu + B) / (C * nu + D)

    def df(nu):
        nu = np.asarray(nu, dtype=float)
        return (A * D - B * C) / (C * nu + D) ** 2

    def d2f(nu):
        nu = np.asarray(nu, dtype=float)
        return -2.0 * C * (A * D - B * C) / (C * nu + D) ** 3

    return WeingartenPair(
        f=f, df=df, d2f=d2f,
        g=lambda nu: np.asarray(nu, dtype=float),
        dg=lambda nu: np.ones_like(np.asarray(nu, dtype=float)),
        d2g=lambda nu: np.zeros_like(np.asarray(nu, dtype=float)),
        interval=interval, kind="linear-fractional",
        params={"A": A, "B": B, "C": C, "D": D},
    )


def table_pair(nu_samples, f_samples, g_samples) -> WeingartenPair:
    """Cubic-spline pair through (nu, f, g) samples."""
    nu_samples = np.asarray(nu_samples, dtype=float)
    if nu_samples.ndim != 1 or len(nu_samples) < 4:
        raise DomainError("custom-table pair needs at least 4 increasing nu samples")
    if np.any(np.diff(nu_samples) <= 0):
        raise DomainError("custom-table nu samples must be strictly increasing")
    fs = CubicSpline(nu_samples, np.asarray(f_samples, dtype=float))
    gs = CubicSpline(nu_samples, np.asarray(g_samples, dtype=float))
    return WeingartenPair(
        f=fs, g=gs,
        df=fs.derivative(1), dg=gs.derivative(1),
        d2f=fs.derivative(2), d2g=gs.derivative(2),
        interval=(nu_samples[0], nu_samples[-1]),
        kind="custom-table",
        params={
            "nu": nu_samples.tolist(),
            "f": np.asarray(f_samples, dtype=float).tolist(),
            "g": np.asarray(g_samples, dtype=float).tolist(),
        },
    )


# -- JSON spec files -----------------------------------------------------

def pair_from_spec(spec: dict) -> WeingartenPair:
    """Build a pair from its JSON description (see module docstring)."""
    if not isinstance(spec, dict) or "kind" not in spec:
        raise DomainError("pair spec must be an object with a 'kind' field")
    kind = spec["kind"]
    interval = tuple(spec["interval"]) if "interval" in spec else None
    try:
        if kind == "minimal":
            return minimal_pair(interval or (1e-3, 10.0))
        if kind == "cmc":
            return cmc_pair(float(spec.get("H", 0.5)), interval)
        if kind == "linear":
            return linear_pair(float(spec["A"]), float(spec["B"]),
                               interval or (0.1, 1.0))
        if kind == "linear-fractional":
            return fractional_pair(float(spec["A"]), float(spec["B"]),
                                   float(spec["C"]), float(spec["D"]),
                                   interval or (0.1, 1.0))
        if kind == "custom-table":
            return table_pair(spec["nu"], spec["f"], spec["g"])
    except KeyError as exc:
        raise DomainError(f"pair spec kind {kind!r} missing field {exc}") from exc
    raise DomainError(f"unknown pair kind {kind!r}")


def pair_to_spec(pair: WeingartenPair) -> dict:
    """Serializable description; inverse of :func:`pair_from_spec`."""
    out = {"kind": pair.kind, "interval": list(pair.interval)}
    out.update(pair.params)
    return out
