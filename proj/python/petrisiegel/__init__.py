from ._core import (
    CurveSpec,
    Error,
    PreconditionError,
    SpecParseError,
    TruncationFailure,
    __version__,
    abel_map,
    builtin_spec,
    fay_residual,
    load_curve_spec,
    parse_curve_spec,
    period_matrix,
    reduce_to_fundamental_domain,
    run_cli,
    selftest,
    theta,
    verify_fay,
    verify_periods,
    verify_petri,
    verify_siegel,
)

__all__ = [
    "CurveSpec",
    "Error",
    "PreconditionError",
    "SpecParseError",
    "TruncationFailure",
    "__version__",
    "abel_map",
    "builtin_spec",
    "fay_residual",
    "load_curve_spec",
    "parse_curve_spec",
    "period_matrix",
    "reduce_to_fundamental_domain",
    "run_cli",
    "selftest",
    "theta",
    "verify_fay",
    "verify_periods",
    "verify_petri",
    "verify_siegel",
]
