"""Numerical laboratory for backward stochastic equations.

Lipschitz envelope construction for merely-continuous drivers, an explicit
backward finite-difference solver, squeeze experiments that certify a
uniqueness gap bound, and two closed-form counterexample families.
"""

from ._core import (
    Envelope,
    EnvelopeSide,
    Generator,
    GridConfig,
    Modulus,
    PathBundle,
    TerminalCondition,
    __version__,
    envelope_gap_bound,
    half_resolution,
    min_time_steps,
    path_bundle_stats,
    run_experiment_file,
    run_squeeze,
    search_radius,
    solve_fd,
    solve_fd_envelope,
    sqrt_family_value,
    strict_comparison_demo,
    validate_report_file,
    verify_envelope_properties,
    verify_quartic_solution,
    verify_sqrt_family,
)

__all__ = [
    "Envelope",
    "EnvelopeSide",
    "Generator",
    "GridConfig",
    "Modulus",
    "PathBundle",
    "TerminalCondition",
    "__version__",
    "envelope_gap_bound",
    "half_resolution",
    "min_time_steps",
    "path_bundle_stats",
    "run_experiment_file",
    "run_squeeze",
    "search_radius",
    "solve_fd",
    "solve_fd_envelope",
    "sqrt_family_value",
    "strict_comparison_demo",
    "validate_report_file",
    "verify_envelope_properties",
    "verify_quartic_solution",
    "verify_sqrt_family",
]
