"""Convergence laboratory: numerical studies with pinned, testable behavior.

The heavy lifting lives in the compiled extension ``convlab._core``; this
package re-exports its public names.
"""

from ._core import (  # noqa: F401
    GOLDEN_RATIO,
    MAX_FIB_INDEX,
    RateFit,
    RootRun,
    SimConfig,
    abs_rel_error,
    activation,
    bell_summary,
    delta_phi,
    empirical_order,
    estimate_k,
    euler_error_builtin,
    euler_solve,
    fib_sequence,
    field_error,
    fit_rate,
    geometric_bound,
    golden_series,
    muscle_rest_length,
    newton,
    restrict_field,
    resolve_plan,
    reynolds,
    run_cli,
    run_swim,
    secant,
    terms_for_tolerance,
    time_scaling,
    trap_composite,
    trap_error_bound,
    trap_nonperiodic,
    trap_periodic,
)

__all__ = [
    "GOLDEN_RATIO",
    "MAX_FIB_INDEX",
    "RateFit",
    "RootRun",
    "SimConfig",
    "abs_rel_error",
    "activation",
    "bell_summary",
    "delta_phi",
    "empirical_order",
    "estimate_k",
    "euler_error_builtin",
    "euler_solve",
    "fib_sequence",
    "field_error",
    "fit_rate",
    "geometric_bound",
    "golden_series",
    "muscle_rest_length",
    "newton",
    "restrict_field",
    "resolve_plan",
    "reynolds",
    "run_cli",
    "run_swim",
    "secant",
    "terms_for_tolerance",
    "time_scaling",
    "trap_composite",
    "trap_error_bound",
    "trap_nonperiodic",
    "trap_periodic",
]

__version__ = "1.0.0"
