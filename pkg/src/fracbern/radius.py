"""Convergence radius diagnostics from coefficient magnitudes.

For a series sum_n c_n t**(beta*n) / Gamma(beta*n + 1), the root-test proxy

    r_n = (Gamma(beta*n + 1) / |c_n|) ** (1 / (beta*n)) = |d_n| ** (-1/(beta*n))

stabilizes as n grows whenever the solution continues analytically up to a
singularity, and its tail estimates the convergence radius in t.  Entries
with c_n = 0 carry no information and are recorded separately instead of
breaking the sequence.
"""

from __future__ import annotations

import math
import statistics
from dataclasses import dataclass

import numpy as np

from .coeffs import CoeffTable

__all__ = ["RadiusSequence", "radius_sequence", "radius_from_normalized"]


@dataclass(frozen=True)
class RadiusSequence:
    """Root-test estimates (n, r_n), a tail summary, and skipped indices.

    tail_summary is the median of the last fifth of the entries (at least
    one), or +inf when there are no usable entries at all.  skipped lists
    the indices whose coefficient was exactly zero.
    """

    entries: tuple[tuple[int, float], ...]
    tail_summary: float
    skipped: tuple[int, ...]

    def r_values(self) -> np.ndarray:
        return np.array([r for _, r in self.entries], dtype=float)


def radius_from_normalized(d: np.ndarray, beta: float, n_limit: int) -> RadiusSequence:
    """Radius sequence from a vector of normalized coefficients d_0..d_N.

    Uses indices 1..n_limit.  r_n is computed as exp(-ln|d_n| / (beta*n));
    if that exponent itself overflows (subnormal d_n at tiny beta*n), the
    index is treated as carrying no information and lands in `skipped`
    alongside the exact zeros.
    """
    if not 1 <= n_limit <= len(d) - 1:
        raise ValueError(
            f"n_limit must lie in [1, {len(d) - 1}], got {n_limit!r}"
        )
    entries = []
    skipped = []
    for n in range(1, n_limit + 1):
        v = float(d[n])
        if v == 0.0:
            skipped.append(n)
            continue
        try:
            r = math.exp(-math.log(abs(v)) / (beta * n))
        except OverflowError:
            skipped.append(n)
            continue
        if not math.isfinite(r):
            skipped.append(n)
            continue
        entries.append((n, r))
    if entries:
        tail = [r for _, r in entries[-max(1, len(entries) // 5) :]]
        tail_summary = float(statistics.median(tail))
    else:
        tail_summary = math.inf
    return RadiusSequence(tuple(entries), tail_summary, tuple(skipped))


def radius_sequence(table: CoeffTable, n_limit: int) -> RadiusSequence:
    """Radius sequence for the solution row of a coefficient table.

    n_limit may not exceed table.n_max; if the table overflowed earlier
    than that, the sequence is silently restricted to the finite prefix,
    which is the whole point of recording overflow instead of raising.
    """
    if not 1 <= n_limit <= table.n_max:
        raise ValueError(f"n_limit must lie in [1, {table.n_max}], got {n_limit!r}")
    usable = min(n_limit, table.n_valid - 1)
    if usable < 1:
        return RadiusSequence((), math.inf, ())
    return radius_from_normalized(table.d[0], table.spec.beta, usable)
