import math

import numpy as np
import pytest

from src.core import BiasParams, SqgeParams
from src.core.constants import DEMO_BIAS


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run campaign-scale Monte Carlo tests")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: campaign-scale test, skipped unless --runslow is given")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def rng():
    return np.random.default_rng(20240229)


@pytest.fixture
def full_grid():
    """101 x 101 (phi, alpha) points over [0, 2pi]^2, flattened."""
    axis = np.linspace(0.0, 2 * math.pi, 101)
    alpha, phi = np.meshgrid(axis, axis, indexing="ij")
    return phi.ravel(), alpha.ravel()


@pytest.fixture
def demo_bias():
    return DEMO_BIAS


@pytest.fixture
def random_bias(rng):
    def draw(scale=0.5):
        return BiasParams.from_array(rng.uniform(-scale, scale, 5))

    return draw


@pytest.fixture
def random_sqge(rng):
    def draw(scale=math.pi / 10):
        return SqgeParams.from_array(rng.uniform(-scale, scale, 5))

    return draw
