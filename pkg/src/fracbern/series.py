"""Evaluation of truncated series solutions and their Caputo derivative.

A SeriesSolution stores the normalized coefficients d_0..d_N of

    u(t) = sum_n d_n * t**(beta*n),

so evaluation is a Horner pass in x = t**beta.  The Caputo derivative of
order beta maps t**(beta*n) / Gamma(beta*n + 1) to the same monomial one
index down, which at the normalized level is a shift plus division by the
step ratio; the derivative of a truncated series is therefore itself a
SeriesSolution one order shorter, and the equation residual can be formed
without any quadrature.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .coeffs import CoeffTable, ProblemSpec
from .radius import radius_from_normalized
from .special import gamma_step_ratio

__all__ = [
    "SeriesSolution",
    "solution_from_table",
    "evaluate",
    "evaluate_grid",
    "caputo_derivative",
    "residual",
    "safe_t_max",
]


@dataclass(frozen=True, eq=False)
class SeriesSolution:
    """Truncated series sum_n d[n] * t**(beta*n) for one problem."""

    beta: float
    d: np.ndarray
    spec: ProblemSpec

    @property
    def order(self) -> int:
        """Highest retained index N."""
        return len(self.d) - 1


def solution_from_table(table: CoeffTable) -> SeriesSolution:
    """Solution series over the finite prefix of a coefficient table."""
    n = table.n_valid
    if n == 0:
        raise ValueError("coefficient table has no finite entries")
    d = table.d[0][:n].copy()
    d.setflags(write=False)
    return SeriesSolution(beta=table.spec.beta, d=d, spec=table.spec)


def evaluate(sol: SeriesSolution, t: float) -> float:
    """Series value at a single point t >= 0."""
    t = float(t)
    if not (math.isfinite(t) and t >= 0.0):
        raise ValueError(f"t must be finite and >= 0, got {t!r}")
    x = np.array([t**sol.beta])
    return float(kernels.horner_grid(sol.d, x)[0])


def evaluate_grid(sol: SeriesSolution, t_grid) -> np.ndarray:
    """Series values on an ascending grid of nonnegative points."""
    t = np.asarray(t_grid, dtype=float)
    if t.ndim != 1:
        raise ValueError("t_grid must be one-dimensional")
    if t.size == 0:
        return np.empty(0)
    if not np.all(np.isfinite(t)) or t[0] < 0.0 or np.any(np.diff(t) < 0.0):
        raise ValueError("t_grid must be finite, nonnegative, and ascending")
    x = t**sol.beta
    return kernels.horner_grid(sol.d, x)


def caputo_derivative(sol: SeriesSolution) -> SeriesSolution:
    """Termwise Caputo derivative of order beta, one order shorter.

    In normalized form the derivative coefficients are
    e_n = d_{n+1} / R_n with R_n the Gamma step ratio; the constant term
    drops out, as it must for a Caputo derivative.
    """
    if sol.order < 1:
        raise ValueError("derivative needs a series of order >= 1")
    ratios = np.array(
        [gamma_step_ratio(n, sol.beta) for n in range(sol.order)], dtype=float
    )
    e = sol.d[1:] / ratios
    e.setflags(write=False)
    return SeriesSolution(beta=sol.beta, d=e, spec=sol.spec)


def residual(sol: SeriesSolution, spec: ProblemSpec, t: float) -> float:
    """Defect D^beta u + a0*u - a1*u**(p+1) of the truncated series at t."""
    du = evaluate(caputo_derivative(sol), t)
    u = evaluate(sol, t)
    return du + spec.a0 * u - spec.a1 * u ** (spec.p + 1)


def safe_t_max(sol: SeriesSolution, tol: float) -> float:
    """Largest t at which the truncation is trusted to contribute <= tol.

    Two guards are combined: the last nonzero term's magnitude
    |d_m| * t**(beta*m) must not exceed tol, and t must stay 10% inside the
    estimated convergence radius.  Returns +inf for a constant series
    (nothing was truncated) and 0.0 if no positive t qualifies.
    """
    if not (tol > 0.0 and math.isfinite(tol)):
        raise ValueError(f"tol must be finite and > 0, got {tol!r}")
    nonzero = np.nonzero(sol.d[1:])[0]
    if nonzero.size == 0:
        return math.inf
    m = int(nonzero[-1]) + 1
    t_term = (tol / abs(float(sol.d[m]))) ** (1.0 / (sol.beta * m))
    seq = radius_from_normalized(sol.d, sol.beta, sol.order)
    cap = 0.9 * seq.tail_summary
    out = min(t_term, cap)
    return out if out > 0.0 else 0.0
