from typing import Callable, Tuple

import numpy as np

FD_RELATIVE_STEP = 1e-6
MAX_ITERATIONS = 80
MIN_DAMPING = 2.0 ** -30
SUFFICIENT_DECREASE = 1e-4


def finite_difference_jacobian(function: Callable[[np.ndarray], np.ndarray], x: np.ndarray,
                               relative_step: float = FD_RELATIVE_STEP) -> np.ndarray:
    """Central differences with step relative_step * (1 + |x_j|) per column."""
    x = np.asarray(x, dtype=float)
    columns = []
    for j in range(x.size):
        step = relative_step * (1.0 + abs(x[j]))
        forward = x.copy()
        backward = x.copy()
        forward[j] += step
        backward[j] -= step
        columns.append((function(forward) - function(backward)) / (2 * step))
    return np.column_stack(columns) if columns else np.zeros((0, 0))


def damped_newton(function: Callable[[np.ndarray], np.ndarray], x0: np.ndarray, tolerance: float,
                  max_iterations: int = MAX_ITERATIONS) -> Tuple[np.ndarray, float, bool]:
    """
    Damped Newton iteration for a square system function(x) = 0.

    Steps solve J d = -r in the least-squares sense (singular Jacobians are common at
    multiple roots) and are halved until the residual norm decreases.
    Returns (x, final residual infinity-norm, converged).
    """
    x = np.asarray(x0, dtype=float).copy()
    residual = function(x)
    residual_norm = float(np.linalg.norm(residual))
    for _ in range(max_iterations):
        if not np.all(np.isfinite(residual)):
            return x, np.inf, False
        if np.max(np.abs(residual)) <= tolerance:
            return x, float(np.max(np.abs(residual))), True

        jac = finite_difference_jacobian(function, x)
        step = np.linalg.lstsq(jac, -residual, rcond=None)[0]

        damping = 1.0
        accepted = False
        while damping >= MIN_DAMPING:
            candidate = x + damping * step
            candidate_residual = function(candidate)
            candidate_norm = float(np.linalg.norm(candidate_residual))
            if np.isfinite(candidate_norm) and \
                    candidate_norm <= (1 - SUFFICIENT_DECREASE * damping) * residual_norm:
                x, residual, residual_norm = candidate, candidate_residual, candidate_norm
                accepted = True
                break
            damping /= 2
        if not accepted:
            break

    final_norm = float(np.max(np.abs(residual))) if np.all(np.isfinite(residual)) else np.inf
    return x, final_norm, final_norm <= tolerance
