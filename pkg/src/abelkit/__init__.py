"""abelkit — convex Abel functions of rational maps.

High-precision tools for the Abel equation F(f(x)) = F(x) + 1 where f is a
rational map tangent to the identity at 0: exact power-logarithmic asymptotic
expansions, rigorous high-precision evaluation of the per-orbit constants,
exact rational orbit arithmetic, and shape analysis of the resulting
functions.
"""

from .analysis import (
    CriticalPointResult,
    GridSample,
    IdentityReport,
    ShapeReport,
    critical_point_to_json,
    find_inflection,
    find_minimum,
    golden_ratio,
    grid_csv,
    grid_to_csv,
    identity_report_to_json,
    scan_shape,
    shape_report_to_json,
    verify_identity,
)
from .backend import backend_name, iterate
from .constants import (
    ConstantEstimate,
    SolveParams,
    constant_to_json,
    estimate_constant,
    estimate_constant_additive,
    iterate_real,
    select_parameters,
    solve_for_X,
)
from .errors import (
    AbelkitError,
    AmbiguousRoot,
    DegenerateStep,
    DivisionByZeroPolynomial,
    InfeasibleParameters,
    MapExprSyntaxError,
    NewtonDiverged,
    NonIntegralStep,
    NoSignChange,
    NotCanonical,
    NotTangentToIdentity,
    OrbitEscaped,
    PoleHit,
    ReparametrizationFailed,
    SizeLimit,
    UnknownMap,
    ValidationFailed,
)
from .logseries import (
    Expansion,
    WSeries,
    additive_wseries,
    derive_expansion,
    eval_expansion,
    expansion_from_json,
    expansion_to_json,
    map_label,
    reciprocal,
    residual,
    wseries_to_json,
)
from .mapexpr import parse_map_expr
from .maps import (
    CanonicalForm,
    MapSpec,
    builtin_map,
    builtin_names,
    canonical_form,
    eval_exact,
    higher_map,
)
from .numfmt import (
    agreeing_digits,
    mpf_to_fraction,
    parse_rational,
    truncate_decimal,
)
from .orbits import (
    PatternReport,
    QuetSeq,
    RationalOrbit,
    SumProductSeq,
    VSeq,
    check_patterns,
    orbit_exact,
    orbit_to_json,
    pattern_report_to_json,
    rational_terms_json,
    reparametrize,
    t_sequence,
    u_sequence,
    v_sequence,
)
from .polys import BivarPolyQ, PolyQ

__version__ = "0.1.0"

__all__ = [
    "AbelkitError",
    "AmbiguousRoot",
    "BivarPolyQ",
    "CanonicalForm",
    "ConstantEstimate",
    "CriticalPointResult",
    "DegenerateStep",
    "DivisionByZeroPolynomial",
    "Expansion",
    "GridSample",
    "IdentityReport",
    "InfeasibleParameters",
    "MapExprSyntaxError",
    "MapSpec",
    "NewtonDiverged",
    "NoSignChange",
    "NonIntegralStep",
    "NotCanonical",
    "NotTangentToIdentity",
    "OrbitEscaped",
    "PatternReport",
    "PoleHit",
    "PolyQ",
    "QuetSeq",
    "RationalOrbit",
    "ReparametrizationFailed",
    "ShapeReport",
    "SizeLimit",
    "SolveParams",
    "SumProductSeq",
    "UnknownMap",
    "VSeq",
    "ValidationFailed",
    "WSeries",
    "__version__",
    "additive_wseries",
    "agreeing_digits",
    "backend_name",
    "builtin_map",
    "builtin_names",
    "canonical_form",
    "check_patterns",
    "constant_to_json",
    "critical_point_to_json",
    "derive_expansion",
    "estimate_constant",
    "estimate_constant_additive",
    "eval_exact",
    "eval_expansion",
    "expansion_from_json",
    "expansion_to_json",
    "find_inflection",
    "find_minimum",
    "golden_ratio",
    "grid_csv",
    "grid_to_csv",
    "identity_report_to_json",
    "iterate",
    "iterate_real",
    "map_label",
    "mpf_to_fraction",
    "orbit_exact",
    "orbit_to_json",
    "parse_map_expr",
    "parse_rational",
    "pattern_report_to_json",
    "rational_terms_json",
    "reciprocal",
    "reparametrize",
    "residual",
    "scan_shape",
    "select_parameters",
    "shape_report_to_json",
    "solve_for_X",
    "t_sequence",
    "truncate_decimal",
    "u_sequence",
    "v_sequence",
    "verify_identity",
    "wseries_to_json",
]
