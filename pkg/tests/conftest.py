import numpy as np
import pytest

from sublap import SpaceParams

# The three standard desk setups used throughout the suite.
SETUP_A = dict(n=1, k=1.0, c=1.0)          # Q = 4
SETUP_B = dict(n=1, k=2.0, c=1.0)          # Q = 6
SETUP_C = dict(n=2, k=1.5, c=-2.0)         # Q = 7


@pytest.fixture
def setup_a():
    return SpaceParams(**SETUP_A)


@pytest.fixture
def setup_b():
    return SpaceParams(**SETUP_B)


@pytest.fixture
def setup_c():
    return SpaceParams(**SETUP_C)


@pytest.fixture
def all_setups(setup_a, setup_b, setup_c):
    return [setup_a, setup_b, setup_c]


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
