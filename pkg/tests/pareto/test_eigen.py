import numpy as np
import pytest

from classify.classification import check_strictly_copositive
from conftest import dominant_cases, make_dominant_tensor, make_symmetric_random_tensor
from exceptions.exceptions import TensorError, ZeroVectorError
from pareto.eigen import ParetoKind, lambda_min, mu_min, verify_pareto_H, verify_pareto_Z
from search.budget import SearchBudget
from search.grid import nonnegative_sphere_grid
from tensor.operations import poly_rows
from tensor.tensor import Tensor

PARETO_BUDGET = SearchBudget(multistarts=32)


def grid_oracle(tensor: Tensor, p: float) -> float:
    """Brute-force min of Ax^m / ||x||_p^m over a 1/200 grid of the nonnegative infinity-sphere."""
    grid = nonnegative_sphere_grid(tensor.dim, 1 / 200, cap=200000)
    return float(np.min(poly_rows(tensor, grid) / np.sum(grid ** p, axis=1) ** (tensor.order / p)))


def oracle_fixtures():
    tensors = [make_dominant_tensor(seed, order, dim) for seed, order, dim, _ in dominant_cases(7)]
    return tensors + [Tensor.ones(4, 2), Tensor.identity(3, 3), Tensor.diagonal(4, [1.0, 2.0])]


def test_identity_extremal_values():
    tensor = Tensor.identity(3, 2)
    h_pair = lambda_min(tensor, PARETO_BUDGET)
    z_pair = mu_min(tensor, PARETO_BUDGET)
    assert h_pair.value == pytest.approx(1.0, abs=1e-6)
    assert z_pair.value == pytest.approx(2 ** -0.5, abs=1e-6)
    assert np.allclose(z_pair.vector, [2 ** -0.5, 2 ** -0.5], atol=1e-4)
    assert h_pair.kind == ParetoKind.H and z_pair.kind == ParetoKind.Z
    assert h_pair.verified and z_pair.verified


def test_scaled_identity_is_homogeneous():
    assert lambda_min(Tensor.identity(4, 2, scale=3.0), PARETO_BUDGET).value == pytest.approx(3.0, abs=1e-6)


@pytest.mark.parametrize("tensor", oracle_fixtures())
def test_extremal_values_agree_with_grid_oracle(tensor):
    h_pair = lambda_min(tensor, PARETO_BUDGET)
    z_pair = mu_min(tensor, PARETO_BUDGET)
    assert abs(h_pair.value - grid_oracle(tensor, tensor.order)) <= 1e-3
    assert abs(z_pair.value - grid_oracle(tensor, 2)) <= 1e-3
    assert h_pair.residuals.max_residual <= 1e-6
    assert z_pair.residuals.max_residual <= 1e-6
    assert np.all(h_pair.vector >= 0)
    assert np.sum(h_pair.vector ** tensor.order) == pytest.approx(1.0)
    assert np.linalg.norm(z_pair.vector) == pytest.approx(1.0)


def test_non_symmetric_input_is_flagged(example_tensor):
    pair = lambda_min(example_tensor, PARETO_BUDGET)
    assert pair.symmetric_input is False
    assert pair.to_dict()['symmetric_input'] is False


def test_false_symmetry_claim_is_rejected(example_tensor):
    with pytest.raises(TensorError):
        lambda_min(Tensor(example_tensor.entries, symmetric=True), PARETO_BUDGET)


def test_verify_pareto_residuals_detect_non_eigenpairs():
    tensor = Tensor.identity(3, 2)
    assert verify_pareto_H(tensor, 1.0, [1.0, 0.0]).max_residual == 0.0
    assert verify_pareto_Z(tensor, 1.0, [1.0, 0.0]).max_residual == 0.0
    assert verify_pareto_H(tensor, 2.0, [0.5, 0.5]).eigen_equation > 0
    assert verify_pareto_H(tensor, 1.0, [-1.0, 0.0]).nonneg_violation == 1.0


def test_verify_pareto_rejects_zero_vector():
    with pytest.raises(ZeroVectorError):
        verify_pareto_H(Tensor.identity(3, 2), 1.0, [0.0, 0.0])
    with pytest.raises(ZeroVectorError):
        verify_pareto_Z(Tensor.identity(3, 2), 1.0, [0.0, 0.0])


def test_pareto_is_deterministic_across_thread_counts(dominant_tensor):
    tensor = dominant_tensor(2, 3, 3)
    single = lambda_min(tensor, PARETO_BUDGET.replace(threads=1))
    pooled = lambda_min(tensor, PARETO_BUDGET.replace(threads=4))
    assert single.value == pooled.value
    assert np.array_equal(single.vector, pooled.vector)


def scaling_fixtures():
    # the identity makes Ax^m constant on the m-norm sphere, so only tensors with an isolated minimizer
    randoms = [make_symmetric_random_tensor(seed, order, dim) for seed, order, dim in [(0, 3, 2), (1, 4, 2), (2, 3, 3)]]
    return [Tensor.diagonal(4, [1.0, 2.0]), Tensor.ones(4, 2)] + randoms


@pytest.mark.parametrize("factor", [0.25, 3.0, 1e-3])
@pytest.mark.parametrize("tensor", scaling_fixtures())
def test_lambda_min_scales_linearly_with_the_tensor(tensor, factor):
    pair = lambda_min(tensor, PARETO_BUDGET)
    scaled = lambda_min(tensor.scaled(factor), PARETO_BUDGET)
    assert scaled.value == pytest.approx(factor * pair.value, rel=1e-8, abs=1e-10)
    assert np.allclose(scaled.vector, pair.vector, atol=1e-6)


@pytest.mark.parametrize("tensor", oracle_fixtures())
def test_strictly_copositive_tensors_have_positive_extremal_values(tensor):
    assert check_strictly_copositive(tensor, SearchBudget(grid_resolution=1 / 16, multistarts=16)).holds
    assert lambda_min(tensor, PARETO_BUDGET).value > 0
    assert mu_min(tensor, PARETO_BUDGET).value > 0
