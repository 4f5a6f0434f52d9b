import pytest

from probe_budget import kernels


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    """Compile the numba kernels up front so timed tests measure work, not JIT."""
    kernels.warmup()
