import numpy as np
import pytest

from optsample import BoxDomain, Kernel


@pytest.fixture
def gauss1d():
    return Kernel("gaussian", 1)


@pytest.fixture
def sinc1d():
    return Kernel("sinc", 1)


@pytest.fixture
def exp1d():
    return Kernel("exponential", 1)


@pytest.fixture
def box33():
    return BoxDomain([-3.0], [3.0])


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
