"""Time the compiled kernels against the plain numpy fallback.

Run as a script:

    python3 benchmarks/bench_kernels.py [--repeats N]

Each kernel is timed best-of-N on a fixed workload so the numbers are
comparable across runs.  The compiled path is warmed first; compilation
time is excluded on purpose, it is a one-off cost per process.
"""

import argparse
import math
import time

import numpy as np

from fracbern.kernels import numpy_backend
from fracbern.special import gamma_step_ratio, ln_gamma

try:
    from fracbern.kernels import numba_backend
except ImportError:
    numba_backend = None


def best_of(repeats, fn, *args):
    best = math.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def coeff_workload(n=400, p=3, beta=0.5):
    ratios = np.array([gamma_step_ratio(k, beta) for k in range(n)])

    def run(mod):
        d = np.zeros((p + 1, n + 1))
        d[0, 0] = 0.4
        mod.coeff_recursion(d, ratios, -1.0, -1.0)

    return run


def horner_workload(n_coeffs=400, n_points=200_000):
    rng = np.random.default_rng(7)
    c = rng.standard_normal(n_coeffs) * 0.5 ** np.arange(n_coeffs)
    x = np.linspace(0.0, 1.5, n_points)

    def run(mod):
        mod.horner_grid(c, x)

    return run


def abm_workload(steps=20_000, beta=0.5):
    h = 1.0 / steps
    k = np.arange(steps, dtype=float)
    w_pred = (k + 1.0) ** beta - k**beta
    c_corr = (k + 2.0) ** (beta + 1) + k ** (beta + 1) - 2.0 * (k + 1.0) ** (beta + 1)
    c0_corr = k ** (beta + 1) - (k - beta) * (k + 1.0) ** beta
    g1 = h**beta * math.exp(-ln_gamma(beta + 1.0))
    g2 = h**beta * math.exp(-ln_gamma(beta + 2.0))

    def run(mod):
        u = np.zeros(steps + 1)
        f = np.zeros(steps + 1)
        u[0] = 0.5
        f[0] = 0.25
        mod.abm_sweep(u, f, w_pred, c_corr, c0_corr, g1, g2, -1.0, -1.0, 1)

    return run


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    workloads = [
        ("coeff_recursion (p=3, 400 terms)", coeff_workload()),
        ("horner_grid (400 x 200k)", horner_workload()),
        ("abm_sweep (20k steps)", abm_workload()),
    ]

    if numba_backend is not None:
        for _, run in workloads:
            run(numba_backend)  # trigger compilation outside the timers

    print(f"{'kernel':<34} {'numpy':>10} {'numba':>10} {'speedup':>8}")
    for name, run in workloads:
        t_np = best_of(args.repeats, run, numpy_backend)
        if numba_backend is None:
            print(f"{name:<34} {t_np * 1e3:>8.2f}ms {'n/a':>10} {'n/a':>8}")
            continue
        t_nb = best_of(args.repeats, run, numba_backend)
        print(
            f"{name:<34} {t_np * 1e3:>8.2f}ms {t_nb * 1e3:>8.2f}ms "
            f"{t_np / t_nb:>7.1f}x"
        )


if __name__ == "__main__":
    main()
