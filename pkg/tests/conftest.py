import random

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from ietabel.acceptance import cubic_lattice, sqrt_lattice, step_lattice

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

rngs = st.integers(0, 2**32 - 1).map(random.Random)


@pytest.fixture
def L2():
    return sqrt_lattice(2)


@pytest.fixture
def L3():
    return cubic_lattice()


@pytest.fixture
def L6():
    return step_lattice(6)
