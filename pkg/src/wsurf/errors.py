"""Exception hierarchy shared across the toolkit.

Every error raised by the library derives from :class:`WsurfError`, so callers
(and the CLI) can distinguish numeric failures from ordinary bugs or I/O
problems with a single ``except`` clause.
"""


class WsurfError(Exception):
    """Base class for all toolkit errors."""


# --- surface grids and discrete geometry ---------------------------------

class RegularityError(WsurfError):
    """Parameterization is degenerate: |z_u x z_v| ~ 0 or EG - F^2 <= 0."""


class NotPrincipalError(WsurfError):
    """Grid is not parameterized along principal lines (F or M too large)."""


class UmbilicError(WsurfError):
    """nu1 - nu2 changes sign or falls below the umbilic tolerance."""


class DomainError(WsurfError):
    """Input values leave the admissible domain of a map or pair."""


# --- quadrature / fitting ------------------------------------------------

class QuadratureError(WsurfError):
    """Adaptive quadrature failed to meet tolerance within max depth."""


class FitError(WsurfError):
    """Measured curvature data is inconsistent with the candidate relation."""


class MonotonicityError(WsurfError):
    """A reparameterizing map failed to be strictly monotone."""


# --- parallel surfaces ---------------------------------------------------

class SingularOffsetError(WsurfError):
    """Offset distance hits a focal value: 1 - a*nu vanishes somewhere."""


class ReciprocalSingularityError(WsurfError):
    """Inverse curvature map 1 + a*eps*nu_bar vanishes somewhere."""


# --- linear curvature relations ------------------------------------------

class DegenerateRelationError(WsurfError):
    """Relation coefficients have vanishing discriminant alpha^2-beta^2+4*gamma*delta."""


# --- PDE solvers ----------------------------------------------------------

class NonConvergenceError(WsurfError):
    """Newton iteration exhausted its budget.

    Carries the residual history in ``args[1]`` when available.
    """

    def __init__(self, message, history=None):
        super().__init__(message)
        self.history = list(history) if history is not None else []


class RangeViolationError(WsurfError):
    """Solver iterate left the monotonicity range of the unknown transform."""


class CFLError(WsurfError):
    """Hyperbolic marching step violates the CFL bound dy <= dx."""


# --- generators -----------------------------------------------------------

class RangeError(WsurfError):
    """ODE solution left its admissible range (nu -> 0 or blow-up)."""


class SmoothnessError(WsurfError):
    """Generated surface hits the singular set of its construction."""


class PDEResidualError(WsurfError):
    """Field handed to reconstruction does not satisfy its PDE well enough."""


class CompatibilityError(WsurfError):
    """Frame integration along the two coordinate orders disagrees."""


class UnknownSurfaceError(WsurfError):
    """Requested named surface or exact solution does not exist."""


# --- I/O and CLI ----------------------------------------------------------

class ParseError(WsurfError):
    """File contents violate the documented grid/field format."""


class UsageError(WsurfError):
    """Command line arguments are inconsistent or incomplete."""
