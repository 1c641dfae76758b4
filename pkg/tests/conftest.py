import numpy as np
import pytest

from susykdv import kernels


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    # JIT compilation happens here so runtime-budget assertions downstream
    # measure the operations, not compiler startup.
    kernels.warmup()


@pytest.fixture()
def rng():
    return np.random.default_rng(20240811)
