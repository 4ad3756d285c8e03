"""Local series solutions of Caputo fractional Bernoulli equations.

The initial value problem

    D^beta u(t) + a0 * u(t) = a1 * u(t)**(p+1),    u(0) = u0,

with Caputo derivative of order beta in (0, 1], admits a power series in
t**beta whose coefficients obey a closed recursion.  This package computes
those coefficients in an overflow-safe normalized form, evaluates truncated
solutions and their Caputo derivative, estimates convergence radii, and
cross-checks everything against independent oracles (exact beta = 1
solutions, a fractional Adams-Bashforth-Moulton stepper, and an mpmath
rerun of the recursion).
"""

from .coeffs import (
    CoeffTable,
    ProblemSpec,
    closed_coeff1,
    closed_coeff2,
    closed_coeff3,
    closed_power_coeff1,
    closed_power_coeff2,
    compute_coefficients,
    raw_coefficient,
    solve_coeff3_zero,
)
from .kernels import backend_name
from .oracles import (
    AbmSolution,
    BlowUpError,
    DivergenceError,
    HighPrecCoeffTable,
    ValidationReport,
    abm_solve,
    build_validation_report,
    coefficient_drift,
    evaluate_highprec,
    exact_beta1_bernoulli,
    exact_beta1_logistic_family,
    highprec_coefficients,
)
from .radius import RadiusSequence, radius_from_normalized, radius_sequence
from .series import (
    SeriesSolution,
    caputo_derivative,
    evaluate,
    evaluate_grid,
    residual,
    safe_t_max,
    solution_from_table,
)
from .special import LogMagnitude, gamma_step_ratio, gen_binom, ln_gamma

__version__ = "0.1.0"

__all__ = [
    "ProblemSpec",
    "CoeffTable",
    "compute_coefficients",
    "raw_coefficient",
    "closed_coeff1",
    "closed_coeff2",
    "closed_coeff3",
    "closed_power_coeff1",
    "closed_power_coeff2",
    "solve_coeff3_zero",
    "SeriesSolution",
    "solution_from_table",
    "evaluate",
    "evaluate_grid",
    "caputo_derivative",
    "residual",
    "safe_t_max",
    "RadiusSequence",
    "radius_sequence",
    "radius_from_normalized",
    "BlowUpError",
    "DivergenceError",
    "exact_beta1_logistic_family",
    "exact_beta1_bernoulli",
    "AbmSolution",
    "abm_solve",
    "HighPrecCoeffTable",
    "highprec_coefficients",
    "evaluate_highprec",
    "coefficient_drift",
    "ValidationReport",
    "build_validation_report",
    "LogMagnitude",
    "ln_gamma",
    "gen_binom",
    "gamma_step_ratio",
    "backend_name",
    "__version__",
]
