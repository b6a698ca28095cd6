"""
beta(A) = min over {x >= 0, ||x||_inf = 1} of max_i x_i (Ax^{m-1})_i.

The nonnegative infinity-sphere is the union of the faces {x_k = 1, 0 <= x_i <= 1}, so the
minimax is solved face by face as a box-constrained problem and the faces are min-merged.
"""
from typing import List, Tuple

import numpy as np
from scipy import optimize

from search.budget import SearchBudget
from search.descent import minimax_descent
from search.grid import nonnegative_face_grid
from search.workers import map_workers
from tensor.operations import apply, apply_rows, jacobian
from tensor.tensor import Tensor
from utils.log import get_logger

logger = get_logger(__name__)

POLISH_MAX_ITERATIONS = 200


class BetaResult(object):
    def __init__(self, value: float, vector: np.ndarray, budget: SearchBudget) -> None:
        self.value = value
        self.vector = vector
        self.budget = budget

    def to_dict(self) -> dict:
        return {'value': float(self.value),
                'vector': [float(value) for value in self.vector],
                'budget': self.budget.to_dict()}


def _products(tensor: Tensor, x: np.ndarray) -> np.ndarray:
    return x * apply(tensor, x)


def _objective(tensor: Tensor, x: np.ndarray) -> float:
    return float(np.max(_products(tensor, x)))


def _product_jacobian(tensor: Tensor, x: np.ndarray) -> np.ndarray:
    # row i is the gradient of x_i (Ax^{m-1})_i
    return x[:, None] * jacobian(tensor, x) + np.diag(apply(tensor, x))


def _face_projection(face: int):
    def project(y):
        x = np.clip(y, 0.0, 1.0)
        x[face] = 1.0
        return x
    return project


def _face_subgradient(tensor: Tensor, face: int):
    def subgradient(x):
        gradient = _product_jacobian(tensor, x)[int(np.argmax(_products(tensor, x)))]
        gradient[face] = 0.0
        return gradient
    return subgradient


def _polish_face(tensor: Tensor, face: int, x: np.ndarray, value: float) -> Tuple[float, np.ndarray]:
    """SLSQP on the epigraph form min s s.t. s >= x_i (Ax^{m-1})_i over the face's free coordinates."""
    dim = tensor.dim
    free = [i for i in range(dim) if i != face]
    if not free:
        return value, x

    def expand(z):
        point = np.ones(dim)
        point[free] = z[:-1]
        return point

    def constraint(z):
        return z[-1] - _products(tensor, expand(z))

    def constraint_jacobian(z):
        product_jacobian = _product_jacobian(tensor, expand(z))[:, free]
        return np.hstack([-product_jacobian, np.ones((dim, 1))])

    start = np.concatenate([x[free], [value]])
    bounds = optimize.Bounds(np.concatenate([np.zeros(len(free)), [-np.inf]]),
                             np.concatenate([np.ones(len(free)), [np.inf]]))
    result = optimize.minimize(lambda z: z[-1], start, method='SLSQP',
                               jac=lambda z: np.eye(len(z))[-1],
                               bounds=bounds,
                               constraints=[{'type': 'ineq', 'fun': constraint, 'jac': constraint_jacobian}],
                               options={'maxiter': POLISH_MAX_ITERATIONS})

    # SLSQP's own objective is only an upper bound within its feasibility tolerance; re-evaluate honestly
    candidate = np.clip(expand(result.x), 0.0, 1.0)
    candidate_value = _objective(tensor, candidate)
    if candidate_value < value:
        return candidate_value, candidate
    return value, x


def _face_tasks(tensor: Tensor, budget: SearchBudget, face: int) -> List[Tuple[int, int, np.ndarray]]:
    dim = tensor.dim
    grid = nonnegative_face_grid(dim, face, budget.grid_resolution)
    values = (grid * apply_rows(tensor, grid)).max(axis=1)
    ranking = np.lexsort((np.arange(len(values)), values))
    seeded = min(len(ranking), max(1, budget.multistarts // 2))
    tasks = [(face, index, grid[ranking[index]]) for index in range(seeded)]
    project = _face_projection(face)
    for index in range(seeded, budget.multistarts):
        rng = budget.rng(face * budget.multistarts + index)
        tasks.append((face, index, project(rng.random(dim))))
    return tasks


def beta(tensor: Tensor, budget: SearchBudget = None) -> BetaResult:
    budget = budget if budget is not None else SearchBudget()
    dim = tensor.dim

    def descend(task):
        face, _, start = task
        return minimax_descent(lambda x: _objective(tensor, x), _face_subgradient(tensor, face),
                               start, _face_projection(face))

    tasks = [task for face in range(dim) for task in _face_tasks(tensor, budget, face)]
    outcomes = map_workers(descend, tasks, budget.threads)

    face_best = {}
    for (face, _, _), (value, x) in zip(tasks, outcomes):
        if face not in face_best or value < face_best[face][0]:
            face_best[face] = (value, x)

    polished = map_workers(lambda face: _polish_face(tensor, face, face_best[face][1], face_best[face][0]),
                           range(dim), budget.threads)

    best_value, best_vector = polished[0]
    for value, vector in polished[1:]:
        if value < best_value:
            best_value, best_vector = value, vector
    logger.debug(f'beta over {dim} faces and {len(tasks)} descents reached {best_value!r}')
    return BetaResult(float(best_value), best_vector, budget)
