"""Numerical toolkit for Weingarten surfaces on structured parameter grids.

Submodules
----------
``grid``        grid containers and file formats (CSV/JSON header, OBJ export)
``curvature``   fundamental forms, principal curvatures, frame invariants
``pairs``       Weingarten pairs nu1 = f(nu), nu2 = g(nu) and their integrals
``natural``     natural principal parameters, gauges, the natural PDE residual
``parallel``    offset surfaces and the transformation laws of invariants
``linearclass`` linear curvature relations, Moebius form, ten basic classes
``pde``         the four canonical operators, elliptic/hyperbolic solvers
``generators``  named surfaces, swept/rotational constructions, reconstruction
``cli``         the ``wsurf`` command-line front end
"""
from .errors import (
    CFLError, CompatibilityError, DegenerateRelationError, DomainError,
    FitError, MonotonicityError, NonConvergenceError, NotPrincipalError,
    ParseError, PDEResidualError, QuadratureError, RangeError,
    RangeViolationError, ReciprocalSingularityError, RegularityError,
    SingularOffsetError, SmoothnessError, UmbilicError, UnknownSurfaceError,
    UsageError, WsurfError,
)
from .grid import GridSpec, SurfaceGrid, read_grid, write_grid, write_obj
from .curvature import (
    CurvatureField, FormField, ResidualField, codazzi_residual,
    curvature_field, first_fundamental_form, fundamental_forms,
    gauss_residual, second_fundamental_form, umbilic_scan,
)
from .pairs import (
    WeingartenPair, cmc_pair, fractional_pair, linear_pair, minimal_pair,
    pair_from_spec, pair_to_spec, table_pair,
)
from .natural import (
    NaturalGauge, NuField, fit_gauge, natural_integrals, natural_metric,
    natural_pde_residual, naturality_check, nu_from_curvatures,
    reparameterize_to_natural, geodesic_curvatures,
)
from .parallel import (
    offset_sign, offset_surface, parallel_gauge, parallel_invariants,
    parallel_metric, parallel_principal_curvatures, parallel_weingarten_pair,
    verify_parallel_naturality, verify_pde_invariance,
)
from .linearclass import (
    BasicClassId, LinearRelation, MoebiusCoeffs, RowGeometry, basic_pde,
    check_relation, classify, fit_relation, moebius_from_relation,
    parallel_relation, relation_from_moebius, row_geometry,
)
from .pde import (
    NaturalPDEProblem, ScalarField2D, apply_operator, exact_solution,
    ode_exemplar, pde_residual, read_field, solve_elliptic, solve_hyperbolic,
    write_field,
)
from .generators import (
    GammaSurfaceResult, RotationalSolution, SpaceCurveSpec, gamma_surface,
    meridian_curvature_ode, meridian_from_curvature, named_surface,
    reconstruct_surface, rotational_basic45, rotational_natural_ode,
)

__version__ = "0.1.0"
