import numpy as np
import pytest

from tspgcn.core import TspInstance
from tspgcn.data import generate_instance
from tspgcn.model import GcnConfig
from tspgcn.utils.rng import SplitMix64


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run slow acceptance tests")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def unit_square():
    return TspInstance(((0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)))


@pytest.fixture
def triangle_345():
    return TspInstance(((0.0, 0.0), (0.3, 0.0), (0.3, 0.4)))


@pytest.fixture
def make_instances():
    def make(n, count, seed=0):
        return [generate_instance(n, SplitMix64.substream(seed, i)) for i in range(count)]

    return make


@pytest.fixture
def tiny_config():
    return GcnConfig(l_conv=2, l_mlp=2, h=8, k=3)


@pytest.fixture
def random_heatmap():
    def make(n, seed):
        rng = np.random.default_rng(seed)
        probs = rng.uniform(0.01, 0.99, size=(n, n))
        np.fill_diagonal(probs, 0.0)
        return probs

    return make
