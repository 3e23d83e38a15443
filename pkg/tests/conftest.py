"""
Shared fixtures for the polyfunlab test suite
"""

import random

import pytest

from config import init_config


@pytest.fixture(autouse=True, scope="session")
def testing_config():
    """Every test runs against the testing environment"""
    return init_config("testing")


@pytest.fixture
def rng():
    return random.Random(20240901)
