import itertools
from typing import List, Optional, Tuple, Union

import numpy as np
from scipy.optimize import minimize

from exceptions.exceptions import EnumerationLimitError, InvalidParameterError, InvalidWitnessError
from search.budget import ENUMERATION_MAX_DIM, SearchBudget
from search.newton import damped_newton
from search.workers import map_workers
from tcp.instance import TCPInstance, TCPSolution, SolutionResiduals, SolveMethod, MeritNotFound
from tensor.operations import apply, as_vector, jacobian
from tensor.tensor import Tensor
from utils.log import get_logger

logger = get_logger(__name__)

DEFAULT_TOLERANCE = 1e-8
DEDUP_RADIUS = 1e-6
NEWTON_TOLERANCE = 1e-12
MIN_RANDOM_STARTS = 4
MERIT_MAX_ITERATIONS = 100
MERIT_MIN_STEP = 1e-10
MERIT_BATCH_SIZE = 8
FEASIBILITY_ROUNDING_RETRIES = 8


def verify_solution(instance: TCPInstance, x, tol: float = DEFAULT_TOLERANCE,
                    method: Optional[str] = None) -> TCPSolution:
    x = as_vector(x, instance.dim)
    w = instance.slack(x)
    residuals = SolutionResiduals(x_neg=max(0.0, float(np.max(-x))),
                                  w_neg=max(0.0, float(np.max(-w))),
                                  compl=float(np.max(np.abs(x * w))))
    return TCPSolution(x, w, residuals, method, tol)


def _start_scale(instance: TCPInstance) -> float:
    q_scale = max(float(np.max(np.abs(instance.q))), 1e-3)
    tensor_scale = max(float(np.max(np.abs(instance.tensor.entries))), 1e-12)
    return (q_scale / tensor_scale) ** (1.0 / (instance.order - 1))


def _diagonal_guess(instance: TCPInstance, indices, scale: float) -> np.ndarray:
    # root of q_i + a_{i...i} x_i^{m-1} = 0 when that makes sense, otherwise the generic scale
    order = instance.order
    guess = []
    for i in indices:
        diagonal = instance.tensor.entries[(i,) * order]
        if diagonal * instance.q[i] < 0:
            guess.append(abs(instance.q[i] / diagonal) ** (1.0 / (order - 1)))
        else:
            guess.append(scale)
    return np.array(guess)


def _support_starts(instance: TCPInstance, support: Tuple[int, ...], rng: np.random.Generator,
                    random_count: int) -> List[np.ndarray]:
    scale = _start_scale(instance)
    size = len(support)
    starts = [_diagonal_guess(instance, support, scale)]
    if size <= 3:
        starts += [scale * np.array(corner) for corner in itertools.product((0.5, 1.5), repeat=size)]
    starts += [scale * rng.uniform(0.05, 2.0, size) for _ in range(random_count)]
    return starts


def _dedupe(solutions: List[TCPSolution]) -> List[TCPSolution]:
    kept = []
    for solution in sorted(solutions, key=lambda candidate: tuple(candidate.x)):
        if all(np.max(np.abs(solution.x - other.x)) > DEDUP_RADIUS for other in kept):
            kept.append(solution)
    return kept


def solve_enumerate(instance: TCPInstance, budget: SearchBudget = None,
                    max_dim: int = ENUMERATION_MAX_DIM) -> List[TCPSolution]:
    """
    Solves TCP(A, q) by walking every support set S: with x fixed to 0 off S the
    complementarity conditions leave the square system (q + Ax^{m-1})_S = 0, which is
    solved by multistart damped Newton. Roots are kept when x_S >= -tol and the slack
    off S is >= -tol. Returns the deduplicated solutions sorted lexicographically.
    """
    budget = budget if budget is not None else SearchBudget()
    dim = instance.dim
    if dim > max_dim:
        raise EnumerationLimitError(f'Support enumeration is limited to dimension {max_dim}, got {dim}')

    tol = budget.tolerance
    newton_tolerance = NEWTON_TOLERANCE * (1 + float(np.max(np.abs(instance.q))))
    random_count = max(MIN_RANDOM_STARTS, budget.multistarts // 8)
    supports = [support for size in range(dim + 1) for support in itertools.combinations(range(dim), size)]

    def solve_support(task) -> List[TCPSolution]:
        index, support = task
        if not support:
            candidate = verify_solution(instance, np.zeros(dim), tol, SolveMethod.ENUMERATE)
            return [candidate] if candidate.verified else []

        active = list(support)
        inactive = [i for i in range(dim) if i not in support]

        def system(z):
            x = np.zeros(dim)
            x[active] = z
            return instance.slack(x)[active]

        found = []
        for start in _support_starts(instance, support, budget.rng(index), random_count):
            z, _, converged = damped_newton(system, start, newton_tolerance)
            if not converged or np.min(z) < -tol:
                continue
            x = np.zeros(dim)
            x[active] = np.maximum(z, 0.0)
            if inactive and np.min(instance.slack(x)[inactive]) < -tol:
                continue
            candidate = verify_solution(instance, x, tol, SolveMethod.ENUMERATE)
            if candidate.verified:
                found.append(candidate)
        return found

    results = map_workers(solve_support, list(enumerate(supports)), budget.threads)
    solutions = _dedupe([solution for found in results for solution in found])
    logger.debug(f'Support enumeration over {len(supports)} supports found {len(solutions)} solutions')
    return solutions


def _natural_residual(instance: TCPInstance, x: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    w = instance.slack(x)
    return np.minimum(x, w), w


def _merit(instance: TCPInstance, x: np.ndarray) -> float:
    residual, _ = _natural_residual(instance, x)
    return float(np.dot(residual, residual))


def _generalized_jacobian(instance: TCPInstance, x: np.ndarray, w: np.ndarray) -> np.ndarray:
    # row i of d min(x, w) is e_i where x_i is the active branch, else the row of d(Ax^{m-1})
    rows_from_x = x <= w
    return np.where(rows_from_x[:, None], np.eye(instance.dim), jacobian(instance.tensor, x))


def _merit_gradient(instance: TCPInstance, x: np.ndarray) -> np.ndarray:
    residual, w = _natural_residual(instance, x)
    return 2.0 * _generalized_jacobian(instance, x, w).T.dot(residual)


def _lbfgsb_merit(instance: TCPInstance, x: np.ndarray) -> np.ndarray:
    result = minimize(lambda point: _merit(instance, point), x,
                      jac=lambda point: _merit_gradient(instance, point),
                      method='L-BFGS-B', bounds=[(0.0, None)] * instance.dim,
                      options={'maxiter': 200, 'ftol': 1e-30, 'gtol': 1e-14})
    return np.maximum(result.x, 0.0)


def _semismooth_newton(instance: TCPInstance, x0: np.ndarray, tol: float) -> Tuple[float, np.ndarray]:
    target = (tol * 1e-4) ** 2
    x = np.maximum(np.asarray(x0, dtype=float), 0.0)
    merit = _merit(instance, x)
    fallback_used = False
    for _ in range(MERIT_MAX_ITERATIONS):
        if merit <= target:
            break
        residual, w = _natural_residual(instance, x)
        direction = np.linalg.lstsq(_generalized_jacobian(instance, x, w), -residual, rcond=None)[0]

        step = 1.0
        accepted = False
        while step >= MERIT_MIN_STEP:
            candidate = np.maximum(x + step * direction, 0.0)
            candidate_merit = _merit(instance, candidate)
            if candidate_merit <= (1 - 1e-4 * step) * merit:
                x, merit = candidate, candidate_merit
                accepted = True
                break
            step /= 2

        if not accepted:
            if fallback_used:
                break
            # Newton stalled away from a solution: one quasi-Newton pass on the merit, then retry
            fallback_used = True
            candidate = _lbfgsb_merit(instance, x)
            candidate_merit = _merit(instance, candidate)
            if not candidate_merit < merit:
                break
            x, merit = candidate, candidate_merit
    return merit, x


def _merit_starts(instance: TCPInstance, budget: SearchBudget) -> List[np.ndarray]:
    dim = instance.dim
    scale = _start_scale(instance)
    guess = _diagonal_guess(instance, range(dim), scale)
    guess[instance.q >= 0] = 0.0
    starts = [np.zeros(dim), guess, np.full(dim, scale)]
    rng = budget.rng(0)
    while len(starts) < budget.multistarts:
        starts.append(scale * rng.uniform(0.0, 2.0, dim))
    return starts


def solve_merit(instance: TCPInstance, budget: SearchBudget = None) -> Union[TCPSolution, MeritNotFound]:
    """
    Multistart minimization of the natural-residual merit ||min(x, q + Ax^{m-1})||^2 over x >= 0
    with a semismooth Newton iteration. The lowest-index start reaching merit <= tol^2 wins.
    """
    budget = budget if budget is not None else SearchBudget()
    tol = budget.tolerance
    starts = _merit_starts(instance, budget)

    best_merit, best_iterate = np.inf, starts[0]
    for batch_start in range(0, len(starts), MERIT_BATCH_SIZE):
        batch = starts[batch_start:batch_start + MERIT_BATCH_SIZE]
        outcomes = map_workers(lambda start: _semismooth_newton(instance, start, tol), batch, budget.threads)
        for merit, x in outcomes:
            if merit <= tol ** 2:
                solution = verify_solution(instance, x, tol, SolveMethod.MERIT)
                if solution.verified:
                    return solution
                # small min(x_i, w_i) can still leave x_i w_i above tolerance
                logger.debug(f'Merit {merit!r} reached but the residuals {solution.residuals.max()!r} are too large')
                continue
            if merit < best_merit:
                best_merit, best_iterate = merit, x
    logger.info(f'Merit minimization found no solution over {len(starts)} starts, best merit {best_merit!r}')
    return MeritNotFound(best_merit, best_iterate, len(starts))


def find_feasible(instance: TCPInstance, s_witness, strict: bool = False) -> np.ndarray:
    """
    Scales an S-witness y (y > 0, Ay^{m-1} > 0) to a feasible point x = t^{1/(m-1)} y with
    t = max(0, max_i -q_i / (Ay^{m-1})_i), so that q + Ax^{m-1} = q + t Ay^{m-1} >= 0.
    With strict=True the scale is pushed past t so that x > 0 and q + Ax^{m-1} > 0.
    """
    y = as_vector(s_witness, instance.dim)
    image = apply(instance.tensor, y)
    if np.any(y <= 0) or np.any(image <= 0):
        raise InvalidWitnessError('S-witness must satisfy y > 0 and Ay^(m-1) > 0 componentwise')

    scale = max(0.0, float(np.max(-instance.q / image)))
    if strict:
        scale = 2 * scale + 1 if scale > 0 else 1.0
    elif scale == 0:
        return np.zeros(instance.dim)

    exponent = 1.0 / (instance.order - 1)
    for _ in range(FEASIBILITY_ROUNDING_RETRIES):
        x = scale ** exponent * y
        w = instance.slack(x)
        if np.all(w > 0) if strict else np.all(w >= 0):
            return x
        # rounding pushed some slack just below zero
        scale *= 1 + 1e-12
    raise InvalidWitnessError('Scaled witness failed to reach feasibility; the witness is too close to singular')


class PseudoMonotoneCheck(object):
    def __init__(self, lhs: float, rhs: float, violated: bool, image_x: np.ndarray, image_y: np.ndarray) -> None:
        self.lhs = lhs
        self.rhs = rhs
        self.violated = violated
        self.image_x = image_x
        self.image_y = image_y

    def to_dict(self) -> dict:
        return {'lhs': self.lhs,
                'rhs': self.rhs,
                'violated': self.violated,
                'F_x': [float(value) for value in self.image_x],
                'F_y': [float(value) for value in self.image_y]}


def check_pseudomonotone_violation(instance: TCPInstance, x, y) -> PseudoMonotoneCheck:
    """F(x) = Ax^{m-1} + q violates pseudo-monotonicity at (x, y) when (x-y).F(y) >= 0 but (x-y).F(x) < 0."""
    x = as_vector(x, instance.dim)
    y = as_vector(y, instance.dim)
    if np.any(x < 0) or np.any(y < 0):
        raise InvalidParameterError('Pseudo-monotonicity is checked on nonnegative points only')
    image_x = instance.slack(x)
    image_y = instance.slack(y)
    difference = x - y
    lhs = float(np.dot(difference, image_y))
    rhs = float(np.dot(difference, image_x))
    return PseudoMonotoneCheck(lhs, rhs, lhs >= 0 and rhs < 0, image_x, image_y)


class SolvabilitySample(object):
    def __init__(self, samples: int, solved: int, unsolved_q: List[np.ndarray], largest_solution_norm: float) -> None:
        self.samples = samples
        self.solved = solved
        self.unsolved_q = unsolved_q
        self.largest_solution_norm = largest_solution_norm

    def to_dict(self) -> dict:
        return {'samples': self.samples,
                'solved': self.solved,
                'unsolved_q': [[float(value) for value in q] for q in self.unsolved_q],
                'largest_solution_norm': self.largest_solution_norm}


def sample_solvability(tensor: Tensor, budget: SearchBudget = None, samples: int = 100,
                       max_dim: int = ENUMERATION_MAX_DIM) -> SolvabilitySample:
    """Draws random q ~ N(0, I) and records how many TCP(A, q) come out solvable at this budget."""
    budget = budget if budget is not None else SearchBudget()
    rng = budget.rng(0)
    solved = 0
    unsolved = []
    largest = 0.0
    for _ in range(samples):
        instance = TCPInstance(tensor, rng.standard_normal(tensor.dim))
        if tensor.dim <= max_dim:
            solutions = solve_enumerate(instance, budget, max_dim)
        else:
            outcome = solve_merit(instance, budget)
            solutions = [outcome] if isinstance(outcome, TCPSolution) else []
        if solutions:
            solved += 1
            largest = max(largest, max(float(np.max(np.abs(solution.x))) for solution in solutions))
        else:
            unsolved.append(instance.q.copy())
    return SolvabilitySample(samples, solved, unsolved, largest)
