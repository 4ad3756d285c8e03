"""Independent ground truths for validating series solutions.

Nothing in this module reuses the double-precision recursion or the series
evaluator; each oracle reaches the same quantities by a different route so
that agreement actually means something:

* exact closed forms at beta = 1 (the classical Bernoulli substitution),
* a fractional Adams-Bashforth-Moulton time stepper for beta < 1,
* the same recursion rerun in mpmath arbitrary precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import mpmath
import numpy as np

from . import kernels
from .coeffs import CoeffTable, ProblemSpec
from .special import ln_gamma

__all__ = [
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
]


class BlowUpError(ValueError):
    """The exact solution leaves its domain before the requested time.

    t_critical holds the blow-up time when it has a closed form, else None.
    """

    def __init__(self, message: str, t_critical: float | None = None):
        super().__init__(message)
        self.t_critical = t_critical


class DivergenceError(RuntimeError):
    """The time stepper produced a non-finite iterate; `step` is where."""

    def __init__(self, message: str, step: int):
        super().__init__(message)
        self.step = step


def exact_beta1_logistic_family(u0: float, p: int, t: float) -> float:
    """Exact solution of u' = u - u**(p+1), u(0) = u0, for u0 in (0, 1).

    Written as (1 + (u0**-p - 1) * exp(-p*t)) ** (-1/p), which is stable for
    large t where the textbook exp(t)-over-root form overflows.
    """
    if not 0.0 < u0 < 1.0:
        raise ValueError(f"u0 must lie in (0, 1), got {u0!r}")
    c0 = u0 ** (-p) - 1.0
    return (1.0 + c0 * math.exp(-p * t)) ** (-1.0 / p)


def _blow_up_time(spec: ProblemSpec) -> float | None:
    # Smallest t > 0 with v(t) = 0 for the substituted linear problem, if any.
    p = spec.p
    v0 = spec.u0 ** (-p)
    if spec.a0 == 0.0:
        if spec.a1 == 0.0:
            return None
        t = v0 / (p * spec.a1)
        return t if t > 0.0 else None
    ratio = spec.a1 / spec.a0
    denom = ratio - v0
    if denom == 0.0:
        return None
    arg = ratio / denom
    if arg <= 0.0:
        return None
    t = math.log(arg) / (p * spec.a0)
    return t if t > 0.0 else None


def exact_beta1_bernoulli(spec: ProblemSpec, t: float) -> float:
    """Exact solution at beta = 1 via the substitution v = u**(-p).

    v solves a linear equation:
        v(t) = (u0**-p - a1/a0) * exp(p*a0*t) + a1/a0     (a0 != 0)
        v(t) = u0**-p - p*a1*t                            (a0 == 0)
    and u = v**(-1/p).  Raises BlowUpError when v hits zero (any p) or goes
    negative (p >= 2, where the real branch of v**(-1/p) ends).
    """
    if spec.beta != 1.0:
        raise ValueError(f"closed form requires beta = 1, got beta = {spec.beta!r}")
    if spec.u0 == 0.0:
        raise ValueError("u0 must be nonzero for the v = u**-p substitution")
    p = spec.p
    v0 = spec.u0 ** (-p)
    if spec.a0 != 0.0:
        ratio = spec.a1 / spec.a0
        v = (v0 - ratio) * math.exp(p * spec.a0 * t) + ratio
    else:
        v = v0 - p * spec.a1 * t
    if v == 0.0 or (p >= 2 and v < 0.0):
        tc = _blow_up_time(spec)
        raise BlowUpError(
            f"exact solution leaves its domain by t = {t!r}"
            + (f" (blow-up at t = {tc!r})" if tc is not None else ""),
            t_critical=tc,
        )
    return v ** (-1.0 / p)


class AbmSolution(NamedTuple):
    """Uniform-grid output of the fractional predictor-corrector."""

    t: np.ndarray
    u: np.ndarray


def abm_solve(spec: ProblemSpec, t_end: float, steps: int) -> AbmSolution:
    """Fractional Adams-Bashforth-Moulton march to t_end in `steps` steps.

    Product-rectangle predictor, product-trapezoid corrector, one corrector
    pass per step; at beta = 1 this reduces exactly to the Euler predictor
    with a trapezoid corrector.  The full history sum makes the cost
    O(steps**2).  Raises DivergenceError if an iterate goes non-finite.
    """
    if not (t_end > 0.0 and math.isfinite(t_end)):
        raise ValueError(f"t_end must be finite and > 0, got {t_end!r}")
    if not (isinstance(steps, int) and steps >= 1):
        raise ValueError(f"steps must be an integer >= 1, got {steps!r}")
    beta = spec.beta
    h = t_end / steps
    k = np.arange(steps, dtype=float)
    w_pred = (k + 1.0) ** beta - k**beta
    c_corr = (k + 2.0) ** (beta + 1.0) + k ** (beta + 1.0) - 2.0 * (k + 1.0) ** (beta + 1.0)
    c0_corr = k ** (beta + 1.0) - (k - beta) * (k + 1.0) ** beta
    g1 = h**beta * math.exp(-ln_gamma(beta + 1.0))
    g2 = h**beta * math.exp(-ln_gamma(beta + 2.0))
    u = np.zeros(steps + 1)
    f = np.zeros(steps + 1)
    u[0] = spec.u0
    f[0] = spec.rhs(spec.u0)
    bad = kernels.abm_sweep(
        u, f, w_pred, c_corr, c0_corr, g1, g2, spec.a0, spec.a1, spec.p + 1
    )
    if bad >= 0:
        raise DivergenceError(
            f"time stepper diverged at step {bad} (t = {bad * h!r})", step=int(bad)
        )
    t = h * np.arange(steps + 1, dtype=float)
    return AbmSolution(t=t, u=u)


@dataclass(frozen=True, eq=False)
class HighPrecCoeffTable:
    """Normalized coefficient rows recomputed in mpmath arithmetic."""

    spec: ProblemSpec
    n_max: int
    digits: int
    rows: tuple

    def solution_row(self):
        return self.rows[0]


def highprec_coefficients(
    spec: ProblemSpec, n_max: int, digits: int = 30
) -> HighPrecCoeffTable:
    """Rerun the normalized recursion with `digits` decimal digits.

    Same fill order as the double-precision path, but every product, sum,
    and Gamma ratio is an mpmath operation, so the result is an independent
    high-accuracy reference rather than a reimplementation detail.  Kept
    deliberately small: n_max is capped at 400 because the cost grows
    quadratically.
    """
    if not (isinstance(n_max, int) and 0 <= n_max <= 400):
        raise ValueError(f"n_max must be an integer in [0, 400], got {n_max!r}")
    if not (isinstance(digits, int) and digits >= 30):
        raise ValueError(f"digits must be an integer >= 30, got {digits!r}")
    with mpmath.workdps(digits):
        beta = mpmath.mpf(spec.beta)
        a0 = mpmath.mpf(spec.a0)
        a1 = mpmath.mpf(spec.a1)
        nrows = spec.p + 1
        zero = mpmath.mpf(0)
        d = [[zero] * (n_max + 1) for _ in range(nrows)]
        d[0][0] = mpmath.mpf(spec.u0)
        ratios = [
            mpmath.gamma(n * beta + 1) / mpmath.gamma((n + 1) * beta + 1)
            for n in range(n_max)
        ]
        for n in range(n_max + 1):
            if n > 0:
                d[0][n] = ratios[n - 1] * (a1 * d[nrows - 1][n - 1] - a0 * d[0][n - 1])
            for h in range(1, nrows):
                d[h][n] = mpmath.fsum(d[h - 1][k] * d[0][n - k] for k in range(n + 1))
    return HighPrecCoeffTable(
        spec=spec, n_max=n_max, digits=digits, rows=tuple(tuple(row) for row in d)
    )


def evaluate_highprec(hp: HighPrecCoeffTable, t: float) -> float:
    """Series value at t from the high-precision rows, rounded to float."""
    if t < 0.0:
        raise ValueError(f"t must be >= 0, got {t!r}")
    with mpmath.workdps(hp.digits):
        x = mpmath.mpf(t) ** mpmath.mpf(hp.spec.beta)
        acc = mpmath.mpf(0)
        for c in reversed(hp.solution_row()):
            acc = acc * x + c
        return float(acc)


def coefficient_drift(
    table: CoeffTable, hp: HighPrecCoeffTable, floor: float = 1e-280
) -> float:
    """Max relative deviation of the double table from its mpmath rerun.

    Compares the normalized coefficients row by row over the indices both
    tables cover; reference entries with magnitude below `floor` are
    excluded (their double counterparts live in subnormal territory where
    relative error is meaningless).
    """
    if table.spec != hp.spec:
        raise ValueError("tables describe different problems")
    n_cols = min(table.n_valid, hp.n_max + 1)
    worst = 0.0
    with mpmath.workdps(hp.digits):
        for h in range(table.spec.p + 1):
            for n in range(n_cols):
                ref = hp.rows[h][n]
                if abs(ref) < floor:
                    continue
                err = float(abs((mpmath.mpf(float(table.d[h, n])) - ref) / ref))
                if err > worst:
                    worst = err
    return worst


@dataclass(frozen=True)
class ValidationReport:
    """Pointwise comparison of a series against one oracle."""

    oracle_name: str
    t_grid: tuple[float, ...]
    max_abs_err: float
    max_rel_err: float
    per_point: tuple[tuple[float, float, float], ...]


def build_validation_report(
    oracle_name: str, t_grid, series_values, oracle_values
) -> ValidationReport:
    """Assemble a ValidationReport from parallel value arrays.

    max_rel_err is taken over the points with nonzero oracle value; it is
    0.0 when no point qualifies.
    """
    t = [float(v) for v in t_grid]
    s = [float(v) for v in series_values]
    o = [float(v) for v in oracle_values]
    if not (len(t) == len(s) == len(o)):
        raise ValueError("t_grid, series_values, oracle_values must align")
    max_abs = 0.0
    max_rel = 0.0
    for sv, ov in zip(s, o):
        err = abs(sv - ov)
        max_abs = max(max_abs, err)
        if ov != 0.0:
            max_rel = max(max_rel, err / abs(ov))
    return ValidationReport(
        oracle_name=oracle_name,
        t_grid=tuple(t),
        max_abs_err=max_abs,
        max_rel_err=max_rel,
        per_point=tuple(zip(t, s, o)),
    )
