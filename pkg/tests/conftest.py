import math

import pytest

from koff2d import _backend


def pytest_report_header(config):
    return "koff2d kernel backend: %s" % _backend.backend_name()


@pytest.fixture(scope="session")
def fast_backend():
    """True when the compiled kernels are active (heavier oracles allowed)."""
    return _backend.backend_name() == "cython"


def logspace(lo, hi, n):
    la, lb = math.log10(lo), math.log10(hi)
    return [10.0 ** (la + (lb - la) * i / (n - 1)) for i in range(n)]
