import numpy as np
import pytest

from twomode.oracle import random_state


@pytest.fixture
def rng():
    return np.random.default_rng(20240517)


@pytest.fixture
def random_states(rng):
    """A batch of seeded random physical states for property tests."""
    return [random_state(rng) for _ in range(50)]
