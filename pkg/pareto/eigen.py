"""
Extremal Pareto eigenvalues.

lambda_min / mu_min minimize Ax^m over the nonnegative part of the m-norm / 2-norm unit
sphere. The minimizer of a symmetric tensor is a Pareto H- / Z-eigenvector, so every
result carries the residuals of the corresponding eigen-system.
"""
from typing import Optional, Tuple

import numpy as np

from exceptions.exceptions import ZeroVectorError
from search.budget import SearchBudget
from search.newton import damped_newton
from search.workers import map_workers, best_of
from tensor.operations import apply, as_vector, poly_value, poly_gradient, norm, support
from tensor.tensor import Tensor
from utils.log import get_logger

logger = get_logger(__name__)

PARETO_DEFAULT_MULTISTARTS = 128
ARMIJO_CONSTANT = 1e-4
MAX_DESCENT_ITERATIONS = 600
MIN_STEP = 1e-13
POLISH_CUTOFFS = (1e-9, 1e-6, 1e-4, 1e-2)
POLISH_TOLERANCE = 1e-12
POLISH_SLACK = 1e-9


class ParetoKind(object):
    H = 'H'
    Z = 'Z'


class EigenResiduals(object):
    def __init__(self, eigen_equation: float, slackness: float, nonneg_violation: float,
                 tolerance: Optional[float] = None) -> None:
        self.eigen_equation = eigen_equation
        self.slackness = slackness
        self.nonneg_violation = nonneg_violation
        self.tolerance = tolerance

    @property
    def max_residual(self) -> float:
        return max(self.eigen_equation, self.slackness, self.nonneg_violation)

    @property
    def verified(self) -> bool:
        return self.tolerance is not None and self.max_residual <= self.tolerance

    def to_dict(self) -> dict:
        return {'eigen_equation': self.eigen_equation,
                'slackness': self.slackness,
                'nonneg_violation': self.nonneg_violation}


class ParetoEigenpair(object):
    def __init__(self, value: float, vector: np.ndarray, kind: str, residuals: EigenResiduals,
                 budget: SearchBudget, symmetric_input: bool = True) -> None:
        self.value = value
        self.vector = vector
        self.kind = kind
        self.residuals = residuals
        self.budget = budget
        self.symmetric_input = symmetric_input

    @property
    def verified(self) -> bool:
        return self.residuals.verified

    def to_dict(self) -> dict:
        return {'value': float(self.value),
                'vector': [float(value) for value in self.vector],
                'kind': self.kind,
                'residuals': self.residuals.to_dict(),
                'verified': self.verified,
                'symmetric_input': self.symmetric_input,
                'budget': self.budget.to_dict()}


def _nonzero_vector(tensor: Tensor, x) -> np.ndarray:
    x = as_vector(x, tensor.dim)
    if not np.any(x != 0):
        raise ZeroVectorError('Pareto eigenvector candidates must be nonzero')
    return x


def verify_pareto_H(tensor: Tensor, value: float, x, tol: float = None) -> EigenResiduals:
    x = _nonzero_vector(tensor, x)
    image = apply(tensor, x)
    power = x ** (tensor.order - 1)
    eigen_equation = abs(float(np.dot(x, image)) - value * float(np.dot(x, power)))
    slackness = max(0.0, float(np.max(value * power - image)))
    nonneg_violation = max(0.0, float(np.max(-x)))
    return EigenResiduals(eigen_equation, slackness, nonneg_violation, tol)


def verify_pareto_Z(tensor: Tensor, value: float, x, tol: float = None) -> EigenResiduals:
    x = _nonzero_vector(tensor, x)
    image = apply(tensor, x)
    squared_norm = float(np.dot(x, x))
    order = tensor.order
    eigen_equation = abs(float(np.dot(x, image)) - value * squared_norm ** (order / 2))
    slackness = max(0.0, float(np.max(value * squared_norm ** (order / 2 - 1) * x - image)))
    nonneg_violation = max(0.0, float(np.max(-x)))
    return EigenResiduals(eigen_equation, slackness, nonneg_violation, tol)


def _normalized(y: np.ndarray, p: float) -> np.ndarray:
    return y / norm(y, p)


def _projected_descent(tensor: Tensor, start: np.ndarray, p: float,
                       rng: np.random.Generator) -> Tuple[float, np.ndarray]:
    # descent on the scale-free quotient Ax^m / ||x||_p^m over the orthant; iterates stay on the unit sphere
    order = tensor.order
    y = _normalized(start, p)
    value = poly_value(tensor, y)
    step = 1.0
    for _ in range(MAX_DESCENT_ITERATIONS):
        gradient = poly_gradient(tensor, y) - order * value * y ** (p - 1)
        gradient_norm = np.linalg.norm(gradient)
        if not gradient_norm > 0:
            break
        direction = gradient / gradient_norm

        accepted = False
        while step >= MIN_STEP:
            trial = np.maximum(y - step * direction, 0.0)
            if np.any(trial > 0):
                trial = _normalized(trial, p)
                trial_value = poly_value(tensor, trial)
                sufficient = trial_value <= value + ARMIJO_CONSTANT * float(np.dot(gradient, trial - y))
            else:
                trial = _normalized(rng.random(tensor.dim) + 1e-12, p)
                trial_value = poly_value(tensor, trial)
                sufficient = True
            if sufficient and trial_value < value:
                y, value = trial, trial_value
                accepted = True
                break
            step /= 2
        if not accepted:
            break
        step = min(1.0, step * 2)
    return value, y


def _polish(tensor: Tensor, y: np.ndarray, value: float, p: float) -> Tuple[float, np.ndarray]:
    """Newton on the support-restricted first-order system F_S(x) = value * x_S^[p-1], ||x_S||_p = 1."""
    order, dim = tensor.order, tensor.dim
    for cutoff in POLISH_CUTOFFS:
        active = support(y, cutoff)
        if active.size == 0:
            continue
        inactive = np.setdiff1d(np.arange(dim), active)

        def system(z):
            x = np.zeros(dim)
            x[active] = z[:-1]
            half_gradient = poly_gradient(tensor, x)[active] / order
            return np.concatenate([half_gradient - z[-1] * x[active] ** (p - 1),
                                   [np.sum(np.abs(x[active]) ** p) - 1.0]])

        start = np.concatenate([y[active], [value]])
        solution, _, converged = damped_newton(system, start, POLISH_TOLERANCE * (1 + abs(value)))
        if not converged or np.any(solution[:-1] <= 0):
            continue

        x = np.zeros(dim)
        x[active] = solution[:-1]
        x = _normalized(x, p)
        polished_value = poly_value(tensor, x)
        if polished_value > value + POLISH_SLACK * (1 + abs(value)):
            continue
        if inactive.size:
            off_support = poly_gradient(tensor, x)[inactive] / order
            if np.min(off_support) < -POLISH_SLACK * (1 + abs(polished_value)):
                continue
        return polished_value, x
    return value, y


def _extremal_pair(tensor: Tensor, budget: Optional[SearchBudget], kind: str) -> ParetoEigenpair:
    budget = budget if budget is not None else SearchBudget(multistarts=PARETO_DEFAULT_MULTISTARTS)
    tensor.check_symmetry_claim()
    symmetric = tensor.is_symmetric()
    if not symmetric:
        logger.warning('Tensor is not symmetric; the constrained minimum is computed but its '
                       'Pareto eigenvalue interpretation assumes symmetry')

    dim = tensor.dim
    p = tensor.order if kind == ParetoKind.H else 2
    seeded_starts = [np.eye(dim)[k] for k in range(dim)] + [np.ones(dim)]
    start_count = max(budget.multistarts, len(seeded_starts))

    def run(index):
        rng = budget.rng(index)
        start = seeded_starts[index] if index < len(seeded_starts) else rng.random(dim) + 1e-12
        value, y = _projected_descent(tensor, start, p, rng)
        return _polish(tensor, y, value, p)

    value, vector = best_of(map_workers(run, range(start_count), budget.threads))
    verify = verify_pareto_H if kind == ParetoKind.H else verify_pareto_Z
    residuals = verify(tensor, value, vector, budget.tolerance)
    logger.debug(f'Pareto {kind} minimum {value!r} over {start_count} starts, residual {residuals.max_residual!r}')
    return ParetoEigenpair(value, vector, kind, residuals, budget, symmetric_input=symmetric)


def lambda_min(tensor: Tensor, budget: SearchBudget = None) -> ParetoEigenpair:
    """Smallest Ax^m over {x >= 0, ||x||_m = 1}, a Pareto H-eigenvalue for symmetric tensors."""
    return _extremal_pair(tensor, budget, ParetoKind.H)


def mu_min(tensor: Tensor, budget: SearchBudget = None) -> ParetoEigenpair:
    """Smallest Ax^m over {x >= 0, ||x||_2 = 1}, a Pareto Z-eigenvalue for symmetric tensors."""
    return _extremal_pair(tensor, budget, ParetoKind.Z)
