"""
Shared pytest fixtures for the simulator tests.
"""

import sys
from pathlib import Path

import numpy as np
import pytest

# Add parent directory to path
sys.path.insert(0, str(Path(__file__).parent))

from models import RunConfig
from profiles import make_profile, make_velocity
from gravity import compute_force
from spectral import build_basis


def pytest_configure(config):
    config.addinivalue_line('markers', 'slow: runs several full simulations')


@pytest.fixture
def parabolic():
    """rho0 = x(1 - x) with gamma = 2."""
    return make_profile('parabolic', {'gamma': 2.0})


@pytest.fixture
def parabolic_force(parabolic):
    return compute_force(parabolic)


@pytest.fixture
def at_rest():
    return make_velocity('constant', {'value': 0.0})


@pytest.fixture
def basis16():
    return build_basis(16)


@pytest.fixture
def rng():
    """Random corpora seeded from the run configuration."""
    return np.random.default_rng(RunConfig().seed)


@pytest.fixture(scope='session')
def baseline_result():
    """The default configuration run once per session."""
    from continuation import Simulation
    return Simulation(RunConfig()).run()
