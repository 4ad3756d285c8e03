"""Shared fixtures.

The compiled kernels JIT on first call; warm them once per session so the
timed acceptance checks measure steady-state numerics, not compilation.
"""

import pytest

from fracbern import kernels


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    kernels.warmup()
    return kernels.backend_name()
