import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))  # for the brute oracle module

from detroc import (
    InfoEnvironment,
    ThresholdGrid,
    paper_environments,
    paper_schemes,
)


@pytest.fixture(scope="session")
def schemes():
    return {s.name: s for s in paper_schemes()}


@pytest.fixture(scope="session")
def environments():
    return paper_environments()


@pytest.fixture(scope="session")
def high_high(environments):
    return environments[0]


@pytest.fixture
def replication_grid():
    return ThresholdGrid(mode="replication", samples=41)


@pytest.fixture
def exact_grid():
    return ThresholdGrid(mode="exact")


def random_environment(rng: np.random.Generator, n: int, env_id="rand"):
    return InfoEnvironment(env_id, tuple(rng.random(n)), tuple(rng.random(n)))
