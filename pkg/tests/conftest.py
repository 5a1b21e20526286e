import numpy as np
import pytest

from src.lotto_core.game_instance import GameInstance

REFERENCE_VALUES = (0.5, 0.3, 0.2)


def make_instance(X, Y, v=REFERENCE_VALUES):
    return GameInstance.from_valuations(X, Y, v)


def random_instance(rng: np.random.Generator, num_contests: int, budget_range=(0.2, 3.0)) -> GameInstance:
    """Distinct valuations (a Dirichlet draw has no ties almost surely) and uniform budgets."""
    values = rng.dirichlet(np.ones(num_contests))
    X, Y = rng.uniform(*budget_range, size=2)
    return GameInstance.from_valuations(X, Y, values)


@pytest.fixture
def reference_instance():
    """v = (0.5, 0.3, 0.2), X = Y = 1."""
    return make_instance(1.0, 1.0)


@pytest.fixture
def rng():
    return np.random.default_rng(2024)
