"""Pure-numpy fallback kernels.

Same contracts as the numba backend; convolutions go through np.dot so the
fallback is still O(n^2) with vectorized inner loops rather than O(n^2)
interpreted Python.
"""

import numpy as np


def coeff_recursion(d, step_ratios, a0, a1):
    """Fill the normalized coefficient table in place.

    d has shape (p+1, n_max+1); row i holds the coefficients of u**(i+1)
    and d[0, 0] must already contain u0.  step_ratios[n] is the Gamma ratio
    that advances index n to n+1.  Returns the first column index at which
    a non-finite value appeared, or -1 if every column is finite.
    """
    rows, cols = d.shape
    for n in range(cols):
        if n > 0:
            d[0, n] = step_ratios[n - 1] * (a1 * d[rows - 1, n - 1] - a0 * d[0, n - 1])
        rev = d[0, n::-1]
        for h in range(1, rows):
            d[h, n] = np.dot(d[h - 1, : n + 1], rev)
        if not np.all(np.isfinite(d[:, n])):
            return n
    return -1


def abm_sweep(u, f, w_pred, c_corr, c0_corr, g1, g2, a0, a1, pexp):
    """Predictor-corrector marching loop for the fractional integral form.

    u and f have length steps+1 with u[0] and f[0] preset.  w_pred and
    c_corr are the convolution weights (most recent step at index 0) and
    c0_corr[n] is the special weight multiplying f[0] in the corrector at
    step n.  Returns the first step index at which the iterate went
    non-finite, or -1.
    """
    steps = len(u) - 1
    u0 = u[0]
    for n in range(steps):
        lag = np.dot(w_pred[n::-1], f[: n + 1])
        up = u0 + g1 * lag
        fp = a1 * up**pexp - a0 * up
        acc = c0_corr[n] * f[0]
        if n >= 1:
            acc += np.dot(c_corr[n - 1 :: -1], f[1 : n + 1])
        un = u0 + g2 * (fp + acc)
        u[n + 1] = un
        f[n + 1] = a1 * un**pexp - a0 * un
        if not (np.isfinite(un) and np.isfinite(f[n + 1])):
            return n + 1
    return -1


def horner_grid(coeffs, x):
    """Evaluate sum_k coeffs[k] * x**k at every point of x by Horner."""
    out = np.zeros_like(x)
    for c in coeffs[::-1]:
        out = out * x + c
    return out
