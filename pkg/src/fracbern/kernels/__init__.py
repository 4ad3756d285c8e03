"""Backend selection for the numerical kernels.

The hot loops (coefficient recursion, the predictor-corrector time march,
and grid evaluation) exist twice: a numba-compiled version and a pure-numpy
fallback with identical contracts.  The choice is made once at import time
from the FRACBERN_BACKEND environment variable:

* "auto" (default): numba if it imports, numpy otherwise,
* "numba": require numba, raise if it is missing,
* "numpy": force the fallback even when numba is available.
"""

import os

_choice = os.environ.get("FRACBERN_BACKEND", "auto").strip().lower()
if _choice not in ("auto", "numba", "numpy"):
    raise RuntimeError(
        f"FRACBERN_BACKEND must be 'auto', 'numba', or 'numpy', got {_choice!r}"
    )

if _choice == "numpy":
    from . import numpy_backend as _impl

    _BACKEND_NAME = "numpy"
else:
    try:
        from . import numba_backend as _impl

        _BACKEND_NAME = "numba"
    except ImportError:
        if _choice == "numba":
            raise
        from . import numpy_backend as _impl

        _BACKEND_NAME = "numpy"

coeff_recursion = _impl.coeff_recursion
abm_sweep = _impl.abm_sweep
horner_grid = _impl.horner_grid


def backend_name() -> str:
    """Which backend got picked at import time, 'numba' or 'numpy'."""
    return _BACKEND_NAME


def warmup() -> str:
    """Run every kernel once on tiny inputs.

    On the numba backend this forces jit compilation (or a cache load) so
    that later timed sections measure the algorithm, not the compiler.  On
    the numpy backend it is a cheap no-op pass.  Returns the backend name.
    """
    import numpy as np

    d = np.zeros((2, 3))
    d[0, 0] = 0.5
    coeff_recursion(d, np.array([1.0, 0.9]), 1.0, -1.0)

    u = np.zeros(3)
    f = np.zeros(3)
    u[0] = 0.5
    f[0] = -0.25
    abm_sweep(
        u, f,
        np.array([1.0, 0.5]), np.array([0.6, 0.4]), np.array([0.8, 0.7]),
        0.01, 0.005, 1.0, -1.0, 2,
    )

    horner_grid(np.array([1.0, -0.5]), np.array([0.0, 0.25]))
    return _BACKEND_NAME
