import numpy as np
import pytest

from search.budget import SearchBudget
from tcp.instance import TCPInstance
from tensor.operations import symmetrize
from tensor.tensor import Tensor

# 0-based entries of the 2-dimensional order-3 example whose complementarity map is not pseudo-monotone
EXAMPLE_ENTRIES = {(0, 0, 0): 1.0, (0, 1, 1): 1.0, (1, 0, 0): 1.0, (1, 1, 0): -2.0, (1, 1, 1): 1.0}
EXAMPLE_Q = [-1.5, -0.5]
EXAMPLE_SOLUTIONS = [[0.437016, 1.144123], [1.144123, 0.437016], [1.224745, 0.0]]
EXAMPLE_BETA = 0.4081


@pytest.fixture
def example_tensor():
    return Tensor.from_entries(3, 2, EXAMPLE_ENTRIES)


@pytest.fixture
def example_instance(example_tensor):
    return TCPInstance(example_tensor, EXAMPLE_Q)


@pytest.fixture
def identity_tensor():
    return Tensor.identity(3, 2)


@pytest.fixture
def zero_tensor():
    return Tensor.zeros(3, 2)


@pytest.fixture
def ones_tensor():
    return Tensor.ones(4, 2)


@pytest.fixture
def small_budget():
    return SearchBudget(grid_resolution=1 / 16, multistarts=16)


def make_dominant_tensor(seed: int, order: int, dim: int, sign: float = 1.0) -> Tensor:
    """sign * identity plus a symmetric perturbation too small to flip any class verdict."""
    rng = np.random.default_rng(seed)
    spread = 0.2 / dim ** order
    noise = symmetrize(Tensor(rng.uniform(-spread, spread, (dim,) * order)))
    return Tensor(sign * Tensor.identity(order, dim).entries + noise.entries, symmetric=True)


@pytest.fixture
def dominant_tensor():
    return make_dominant_tensor


def dominant_cases(count: int, signs=(1.0,)):
    """(seed, order, dim, sign) tuples cycling through n <= 3 and m in {3, 4}."""
    shapes = [(3, 2), (4, 2), (3, 3), (4, 3)]
    return [(seed,) + shapes[seed % len(shapes)] + (signs[seed % len(signs)],) for seed in range(count)]


def make_symmetric_random_tensor(seed: int, order: int, dim: int) -> Tensor:
    """Symmetrization of a tensor with entries drawn uniformly from [-1, 1]."""
    rng = np.random.default_rng(seed)
    return symmetrize(Tensor(rng.uniform(-1, 1, (dim,) * order)))
