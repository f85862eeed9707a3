import functools

import pytest

from polarswitch import kernels, polar

BACKENDS = [name for name, _ in kernels.available_backends()]


@pytest.fixture(params=BACKENDS)
def backend(request):
    """Run a test once per kernel backend (compiled and pure python)."""
    with kernels.forced_backend(request.param):
        yield request.param


@functools.lru_cache(maxsize=None)
def cached_space(kind, d, q):
    return polar.polar_create(kind, d, q)


@pytest.fixture(scope="session")
def space_of():
    """Session-wide polar space cache; graphs and point lists are reused."""
    return cached_space
