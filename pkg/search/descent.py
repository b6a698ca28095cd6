from typing import Callable, Tuple

import numpy as np

INITIAL_STEP = 0.25
MIN_STEP = 1e-10
MAX_ITERATIONS = 400


def minimax_descent(objective: Callable[[np.ndarray], float],
                    subgradient: Callable[[np.ndarray], np.ndarray],
                    x0: np.ndarray,
                    project: Callable[[np.ndarray], np.ndarray],
                    initial_step: float = INITIAL_STEP,
                    min_step: float = MIN_STEP,
                    max_iterations: int = MAX_ITERATIONS) -> Tuple[float, np.ndarray]:
    """
    Projected subgradient descent on a max of smooth pieces with fixed step halving.

    objective returns the max, subgradient the gradient of the first active piece.
    Steps are taken along the normalized subgradient; a step is kept only when the
    projected point strictly lowers the objective, otherwise the step is halved.
    The returned value is therefore never worse than the projected start.
    """
    x = project(np.asarray(x0, dtype=float))
    value = objective(x)
    step = initial_step
    for _ in range(max_iterations):
        if step < min_step or not np.isfinite(value):
            break
        direction = subgradient(x)
        direction_norm = np.linalg.norm(direction)
        if not direction_norm > 0 or not np.isfinite(direction_norm):
            break
        candidate = project(x - step * direction / direction_norm)
        candidate_value = objective(candidate)
        if candidate_value < value:
            x, value = candidate, candidate_value
        else:
            step /= 2
    return value, x
