import numpy as np
import pytest

from hklab.fiber import standard_fiber


@pytest.fixture(scope="session")
def fiber1():
    return standard_fiber(1)


@pytest.fixture(scope="session")
def fiber2():
    return standard_fiber(2)


@pytest.fixture()
def rng():
    return np.random.default_rng(20240817)
