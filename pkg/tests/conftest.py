import numpy as np
import pytest

from sturmkit import GridFunction
from sturmkit._propagator import warmup


@pytest.fixture(scope="session", autouse=True)
def _warm_jit():
    # compile the propagation kernels once so test timings measure solves
    warmup()


def grid_fn(fn, n_grid=512):
    return GridFunction.from_callable(fn, n_grid)


@pytest.fixture
def zero_512():
    return GridFunction.zero(512)


@pytest.fixture
def cos_512():
    return grid_fn(lambda x: np.cos(2 * np.pi * x))
