import numpy as np
import pytest

from holoscope import RationalMap, polynomial_map


@pytest.fixture
def squaring():
    return polynomial_map([0.0, 0.0, 1.0])


@pytest.fixture
def chebyshev2():
    # z^2 - 2, Julia set [-2, 2]
    return polynomial_map([-2.0, 0.0, 1.0])


@pytest.fixture
def basilica():
    return polynomial_map([-1.0, 0.0, 1.0])


@pytest.fixture
def quartic():
    return polynomial_map([0.0, 0.0, 0.0, 0.0, 1.0])


@pytest.fixture
def newtonish():
    # (z^2 + 2) / (2 z): repelling fixed point at infinity, multiplier 2
    return RationalMap([2.0, 0.0, 1.0], [0.0, 2.0])


@pytest.fixture
def rng():
    return np.random.default_rng(42)
