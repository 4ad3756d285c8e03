"""Numba-compiled kernels, the default backend when numba imports.

Contracts are documented on the numpy twin in numpy_backend.py; keep the
two in lockstep when editing either.
"""

import numpy as np
from numba import njit


@njit(cache=True)
def coeff_recursion(d, step_ratios, a0, a1):
    rows, cols = d.shape
    for n in range(cols):
        if n > 0:
            d[0, n] = step_ratios[n - 1] * (a1 * d[rows - 1, n - 1] - a0 * d[0, n - 1])
        for h in range(1, rows):
            acc = 0.0
            for k in range(n + 1):
                acc += d[h - 1, k] * d[0, n - k]
            d[h, n] = acc
        for h in range(rows):
            if not np.isfinite(d[h, n]):
                return n
    return -1


@njit(cache=True)
def abm_sweep(u, f, w_pred, c_corr, c0_corr, g1, g2, a0, a1, pexp):
    steps = len(u) - 1
    u0 = u[0]
    for n in range(steps):
        lag = 0.0
        for j in range(n + 1):
            lag += w_pred[n - j] * f[j]
        up = u0 + g1 * lag
        fp = a1 * up**pexp - a0 * up
        acc = c0_corr[n] * f[0]
        for j in range(1, n + 1):
            acc += c_corr[n - j] * f[j]
        un = u0 + g2 * (fp + acc)
        u[n + 1] = un
        f[n + 1] = a1 * un**pexp - a0 * un
        if not (np.isfinite(un) and np.isfinite(f[n + 1])):
            return n + 1
    return -1


@njit(cache=True)
def horner_grid(coeffs, x):
    out = np.zeros_like(x)
    ncoef = len(coeffs)
    for i in range(len(x)):
        acc = 0.0
        xi = x[i]
        for k in range(ncoef - 1, -1, -1):
            acc = acc * xi + coeffs[k]
        out[i] = acc
    return out
