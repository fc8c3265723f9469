"""Shared fixtures and parameter grids."""

import numpy as np
import pytest

from twostar import Theta

# 20 parameter points covering every domain class except the critical
# point: theta1 = 0 below and above 1/2, and both signs of theta1.
THETA_GRID = [
    Theta(0.0, 0.1),
    Theta(0.0, 0.25),
    Theta(0.0, 0.4),
    Theta(0.0, 0.45),
    Theta(0.0, 0.55),
    Theta(0.0, 0.6),
    Theta(0.0, 0.75),
    Theta(0.0, 1.0),
    Theta(0.0, 2.0),
    Theta(0.0, 3.0),
    Theta(0.2, 0.3),
    Theta(0.5, 0.5),
    Theta(1.0, 0.75),
    Theta(2.0, 1.5),
    Theta(0.3, 1.0),
    Theta(-0.2, 0.3),
    Theta(-0.5, 0.5),
    Theta(-1.0, 0.75),
    Theta(-2.0, 1.5),
    Theta(-0.3, 1.0),
]


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
