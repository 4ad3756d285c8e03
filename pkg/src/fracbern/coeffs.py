"""Series coefficients for the fractional Bernoulli initial value problem

    D^beta u + a0 * u = a1 * u**(p+1),    u(0) = u0,

where D^beta is the Caputo derivative of order beta in (0, 1].  The local
solution is a power series in t**beta; this module builds its coefficients.

Working directly with the raw coefficients c_n is hopeless in double
precision because they carry Gamma(n*beta + 1) factors.  Everything here
uses the normalized table

    d_n^(h) = c_n^(h) / Gamma(n*beta + 1),

in which the recursion collapses to plain Cauchy products:

    d_n^(h)   = sum_{k=0..n} d_k^(h-1) * d_{n-k}^(1),
    d_{n+1}^(1) = R_n * (a1 * d_n^(p+1) - a0 * d_n^(1)),

with R_n = Gamma(n*beta+1) / Gamma((n+1)*beta+1).  The normalized values
are exactly the coefficients of u(t) as a series in t**beta, so evaluation
never needs the raw c_n at all; `raw_coefficient` reconstructs them in
sign/log form on demand.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .special import LogMagnitude, gamma_step_ratio, gen_binom, ln_gamma

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
]


@dataclass(frozen=True)
class ProblemSpec:
    """One initial value problem D^beta u + a0*u = a1*u**(p+1), u(0) = u0."""

    beta: float
    a0: float
    a1: float
    p: int
    u0: float

    def __post_init__(self):
        beta = self.beta
        if not (isinstance(beta, (int, float)) and math.isfinite(beta)):
            raise ValueError(f"beta must be a finite number, got {beta!r}")
        if not 0.0 < beta <= 1.0:
            raise ValueError(f"beta must lie in (0, 1], got {beta!r}")
        for name in ("a0", "a1", "u0"):
            v = getattr(self, name)
            if not (isinstance(v, (int, float)) and math.isfinite(v)):
                raise ValueError(f"{name} must be a finite number, got {v!r}")
        if not (isinstance(self.p, int) and not isinstance(self.p, bool) and self.p >= 1):
            raise ValueError(f"p must be an integer >= 1, got {self.p!r}")
        # Normalize ints to floats so downstream arithmetic and equality
        # comparisons behave uniformly.
        for name in ("beta", "a0", "a1", "u0"):
            object.__setattr__(self, name, float(getattr(self, name)))

    def rhs(self, u: float) -> float:
        """Right-hand side a1*u**(p+1) - a0*u of the integral formulation."""
        return self.a1 * u ** (self.p + 1) - self.a0 * u


@dataclass(frozen=True, eq=False)
class CoeffTable:
    """Normalized coefficients d_n^(h) for h = 1..p+1, n = 0..n_max.

    Row h-1 of `d` holds the series coefficients of u**h; row 0 is the
    solution itself.  If the recursion overflowed, `overflow_at` is the
    first bad index and every column from there on is NaN.  The array is
    write-protected after construction.
    """

    spec: ProblemSpec
    n_max: int
    d: np.ndarray
    overflow_at: int | None

    @property
    def n_valid(self) -> int:
        """Number of leading columns that hold finite values."""
        return self.n_max + 1 if self.overflow_at is None else self.overflow_at

    def power_row(self, h: int) -> np.ndarray:
        """Coefficient row for u**h (h = 1 is the solution)."""
        if not 1 <= h <= self.spec.p + 1:
            raise IndexError(f"power h must lie in [1, {self.spec.p + 1}], got {h}")
        return self.d[h - 1]


def compute_coefficients(spec: ProblemSpec, n_max: int) -> CoeffTable:
    """Build the normalized coefficient table up to index n_max.

    Fill order per column: the solution row first, then each power row from
    the previous one by one Cauchy product.  On overflow the computation
    stops, the offending and all later columns become NaN, and the table
    records the index; callers work with the finite prefix.
    """
    if not (isinstance(n_max, int) and n_max >= 0):
        raise ValueError(f"n_max must be an integer >= 0, got {n_max!r}")
    rows = spec.p + 1
    d = np.zeros((rows, n_max + 1))
    d[0, 0] = spec.u0
    ratios = np.array(
        [gamma_step_ratio(n, spec.beta) for n in range(n_max)], dtype=float
    )
    bad = kernels.coeff_recursion(d, ratios, spec.a0, spec.a1)
    overflow_at = None if bad < 0 else int(bad)
    if overflow_at is not None:
        d[:, overflow_at:] = np.nan
    d.setflags(write=False)
    return CoeffTable(spec=spec, n_max=n_max, d=d, overflow_at=overflow_at)


def raw_coefficient(table: CoeffTable, h: int, n: int) -> LogMagnitude:
    """Un-normalized coefficient c_n^(h) = d_n^(h) * Gamma(n*beta + 1).

    Returned in sign/log form because the Gamma factor overflows floats for
    large n.  Raises IndexError for h or n outside the table and ValueError
    for entries at or past the overflow index.
    """
    if not 1 <= h <= table.spec.p + 1:
        raise IndexError(f"power h must lie in [1, {table.spec.p + 1}], got {h}")
    if not 0 <= n <= table.n_max:
        raise IndexError(f"index n must lie in [0, {table.n_max}], got {n}")
    if table.overflow_at is not None and n >= table.overflow_at:
        raise ValueError(
            f"entry (h={h}, n={n}) is past the overflow index {table.overflow_at}"
        )
    v = float(table.d[h - 1, n])
    if v == 0.0:
        return LogMagnitude(0, -math.inf)
    sign = 1 if v > 0.0 else -1
    return LogMagnitude(sign, math.log(abs(v)) + ln_gamma(n * table.spec.beta + 1.0))


# ---------------------------------------------------------------------------
# Closed formulas for the first few raw coefficients.  These are independent
# of the recursion (hand-expanded once from the defining relations) and exist
# to cross-check it; do not "simplify" them to call the table builder.
# ---------------------------------------------------------------------------


def closed_coeff1(spec: ProblemSpec) -> float:
    """c_1 = -u0 * (a0 - a1*u0**p)."""
    return -spec.u0 * (spec.a0 - spec.a1 * spec.u0**spec.p)


def closed_coeff2(spec: ProblemSpec) -> float:
    """c_2 = u0 * (a0 - a1*u0**p) * (a0 - a1*(p+1)*u0**p)."""
    up = spec.u0**spec.p
    return spec.u0 * (spec.a0 - spec.a1 * up) * (spec.a0 - spec.a1 * (spec.p + 1) * up)


def closed_coeff3(spec: ProblemSpec) -> float:
    """Third coefficient; the only one of the three that feels beta.

    c_3 = -u0 * g * (gp**2 - (p*(p+1)/2) * B * a1 * u0**p * g) with
    g = a0 - a1*u0**p, gp = a0 - a1*(p+1)*u0**p, and B the generalized
    binomial at (n, k) = (2, 1).
    """
    up = spec.u0**spec.p
    g = spec.a0 - spec.a1 * up
    gp = spec.a0 - spec.a1 * (spec.p + 1) * up
    b2 = gen_binom(2, 1, spec.beta)
    bracket = gp * gp - 0.5 * spec.p * (spec.p + 1) * b2 * spec.a1 * up * g
    return -spec.u0 * g * bracket


def closed_power_coeff1(spec: ProblemSpec, h: int) -> float:
    """Index-1 coefficient of u**h: -h * u0**h * (a0 - a1*u0**p)."""
    if h < 1:
        raise ValueError(f"power h must be >= 1, got {h}")
    return -h * spec.u0**h * (spec.a0 - spec.a1 * spec.u0**spec.p)


def closed_power_coeff2(spec: ProblemSpec, h: int) -> float:
    """Index-2 coefficient of u**h.

    c_2^(h) = u0**h * g * (h*gp + (h*(h-1)/2) * B * g) with the same g, gp,
    and B as in closed_coeff3.
    """
    if h < 1:
        raise ValueError(f"power h must be >= 1, got {h}")
    up = spec.u0**spec.p
    g = spec.a0 - spec.a1 * up
    gp = spec.a0 - spec.a1 * (spec.p + 1) * up
    b2 = gen_binom(2, 1, spec.beta)
    return spec.u0**h * g * (h * gp + 0.5 * h * (h - 1) * b2 * g)


def solve_coeff3_zero(
    beta: float,
    a0: float,
    a1: float,
    p: int,
    *,
    grid_points: int = 4096,
    tol: float = 1e-12,
) -> list[float]:
    """All roots of u0 -> c_3(u0) on the open interval (0, 1).

    Scans a uniform grid for sign changes and bisects each bracket down to
    `tol`.  Grid nodes where c_3 is exactly zero are kept as roots directly.
    Returns the roots in increasing order (possibly an empty list).
    """
    if grid_points < 2:
        raise ValueError("grid_points must be at least 2")

    def f(u0: float) -> float:
        return closed_coeff3(ProblemSpec(beta=beta, a0=a0, a1=a1, p=p, u0=u0))

    xs = [i / grid_points for i in range(1, grid_points)]
    vals = [f(x) for x in xs]
    roots = []
    for i in range(len(xs) - 1):
        va, vb = vals[i], vals[i + 1]
        if va == 0.0:
            roots.append(xs[i])
            continue
        if vb == 0.0 or va * vb > 0.0:
            continue
        a, b = xs[i], xs[i + 1]
        fa = va
        while b - a > tol:
            mid = 0.5 * (a + b)
            fm = f(mid)
            if fm == 0.0:
                a = b = mid
                break
            if fa * fm < 0.0:
                b = mid
            else:
                a, fa = mid, fm
        roots.append(0.5 * (a + b))
    if vals[-1] == 0.0:
        roots.append(xs[-1])
    return sorted(roots)
