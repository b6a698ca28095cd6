"""
Budget-relative membership tests for the structured tensor classes.

Every class predicate is continuous and piecewise polynomial on a compact slice of the
unit infinity-sphere, so each test minimizes one extremal function over that slice
(grid seeding, then multistart projected minimax descent) and compares the best value
found against the budget tolerance.
"""
from typing import Callable, Optional, Tuple

import numpy as np

from classify.report import ClassificationReport, ClassificationSummary, TensorClass, Verdict, WitnessMeaning
from search.budget import SearchBudget
from search.descent import minimax_descent
from search.grid import nonnegative_sphere_grid, signed_sphere_grid, project_nonnegative_sphere, \
    project_signed_sphere, random_nonnegative_sphere_point, random_signed_sphere_point
from search.workers import map_workers
from tensor.operations import SUPPORT_CUTOFF, apply, apply_rows, poly_value, poly_rows, poly_gradient, jacobian
from tensor.tensor import Tensor
from utils.log import get_logger

logger = get_logger(__name__)

SHIFT_ATTEMPTS = 40


class _Extremal(object):
    """Rows objective for grid scoring plus point objective and subgradient for descent."""

    def __init__(self, rows: Callable, point: Callable, subgradient: Callable, signed: bool = False) -> None:
        self.rows = rows
        self.point = point
        self.subgradient = subgradient
        self.signed = signed


def _minimize(tensor: Tensor, budget: SearchBudget, extremal: _Extremal) -> Tuple[float, np.ndarray]:
    dim = tensor.dim
    if extremal.signed:
        grid = signed_sphere_grid(dim, budget.grid_resolution)
        project, sampler = project_signed_sphere, random_signed_sphere_point
    else:
        grid = nonnegative_sphere_grid(dim, budget.grid_resolution)
        project, sampler = project_nonnegative_sphere, random_nonnegative_sphere_point

    grid_values = extremal.rows(grid)
    ranking = np.lexsort((np.arange(len(grid_values)), grid_values))
    seeded = min(len(ranking), max(1, budget.multistarts // 2))
    tasks = [(index, grid[ranking[index]]) for index in range(seeded)]
    tasks += [(index, None) for index in range(seeded, budget.multistarts)]

    def descend(task):
        index, start = task
        if start is None:
            start = sampler(budget.rng(index), dim)
        return minimax_descent(extremal.point, extremal.subgradient, start, project)

    best_value, best_point = float(grid_values[ranking[0]]), grid[ranking[0]].copy()
    for value, point in map_workers(descend, tasks, budget.threads):
        if value < best_value:
            best_value, best_point = float(value), point
    logger.debug(f'Search over {len(grid)} grid points and {len(tasks)} descents reached {best_value!r}')
    return best_value, best_point


def _support_margin_extremal(tensor: Tensor) -> _Extremal:
    # max of (Ax^{m-1})_k over the support of x
    def rows(points):
        masked = np.where(points > SUPPORT_CUTOFF, apply_rows(tensor, points), -np.inf)
        return masked.max(axis=1)

    def point(x):
        return float(rows(x[None, :])[0])

    def subgradient(x):
        masked = np.where(x > SUPPORT_CUTOFF, apply(tensor, x), -np.inf)
        return jacobian(tensor, x)[int(np.argmax(masked))]

    return _Extremal(rows, point, subgradient)


def _poly_extremal(tensor: Tensor) -> _Extremal:
    return _Extremal(lambda points: poly_rows(tensor, points),
                     lambda x: poly_value(tensor, x),
                     lambda x: poly_gradient(tensor, x))


def _negated_image_extremal(tensor: Tensor) -> _Extremal:
    # max_i -(Ax^{m-1})_i, so minimizing it maximizes min_i (Ax^{m-1})_i
    def rows(points):
        return (-apply_rows(tensor, points)).max(axis=1)

    def point(x):
        return float(np.max(-apply(tensor, x)))

    def subgradient(x):
        return -jacobian(tensor, x)[int(np.argmin(apply(tensor, x)))]

    return _Extremal(rows, point, subgradient)


def _zero_solution_residual_extremal(tensor: Tensor) -> _Extremal:
    # max(nonnegativity violation of Ax^{m-1}, |Ax^m|)
    def rows(points):
        images = apply_rows(tensor, points)
        negativity = np.maximum((-images).max(axis=1), 0.0)
        return np.maximum(negativity, np.abs(np.einsum('bi,bi->b', points, images)))

    def point(x):
        return float(rows(x[None, :])[0])

    def subgradient(x):
        image = apply(tensor, x)
        negativity = max(float(np.max(-image)), 0.0)
        value = float(np.dot(x, image))
        if abs(value) >= negativity and value != 0:
            return np.sign(value) * poly_gradient(tensor, x)
        if negativity > 0:
            return -jacobian(tensor, x)[int(np.argmin(image))]
        return np.zeros_like(x)

    return _Extremal(rows, point, subgradient)


def _componentwise_product_extremal(tensor: Tensor, support_only: bool) -> _Extremal:
    # max_i x_i (Ax^{m-1})_i over the signed sphere, optionally restricted to x_i != 0
    def rows(points):
        products = points * apply_rows(tensor, points)
        if support_only:
            products = np.where(np.abs(points) > SUPPORT_CUTOFF, products, -np.inf)
        return products.max(axis=1)

    def point(x):
        return float(rows(x[None, :])[0])

    def subgradient(x):
        image = apply(tensor, x)
        products = x * image
        if support_only:
            products = np.where(np.abs(x) > SUPPORT_CUTOFF, products, -np.inf)
        k = int(np.argmax(products))
        gradient = x[k] * jacobian(tensor, x)[k]
        gradient[k] += image[k]
        return gradient

    return _Extremal(rows, point, subgradient, signed=True)


def _normalized(tensor: Tensor) -> Tuple[Tensor, float]:
    """The tensor divided by the power of two 2^e that brings its largest |entry| into [0.5, 1), and 2^e."""
    largest = float(np.max(np.abs(tensor.entries)))
    if largest == 0:
        return tensor, 1.0
    scale = float(np.ldexp(1.0, int(np.frexp(largest)[1])))
    if scale == 1.0:
        return tensor, scale
    return Tensor(tensor.entries / scale, symmetric=tensor.symmetric_flag), scale


def _violation_report(class_name: str, budget: SearchBudget, value: float, point: np.ndarray,
                      violated: bool, scale: float = 1.0) -> ClassificationReport:
    # value lives on the normalized tensor, the report carries it back on the caller's scale
    if not np.isfinite(value):
        return ClassificationReport(class_name, Verdict.UNDETERMINED, budget, extremal_value=None)
    if violated:
        return ClassificationReport(class_name, Verdict.VIOLATED, budget, witness=point,
                                    witness_meaning=WitnessMeaning.VIOLATING_VECTOR, extremal_value=value * scale)
    return ClassificationReport(class_name, Verdict.HOLDS, budget, extremal_value=value * scale)


def _budget(budget: Optional[SearchBudget]) -> SearchBudget:
    return budget if budget is not None else SearchBudget()


def semi_positive_margin(tensor: Tensor, budget: SearchBudget = None) -> Tuple[float, np.ndarray]:
    normalized, scale = _normalized(tensor)
    value, point = _minimize(normalized, _budget(budget), _support_margin_extremal(normalized))
    return value * scale, point


def _semi_positive_reports(normalized: Tensor, scale: float, budget: SearchBudget):
    value, point = _minimize(normalized, budget, _support_margin_extremal(normalized))
    return (_violation_report(TensorClass.SEMI_POSITIVE, budget, value, point, value < -budget.tolerance, scale),
            _violation_report(TensorClass.STRICTLY_SEMI_POSITIVE, budget, value, point, value <= budget.tolerance,
                              scale))


def check_semi_positive(tensor: Tensor, budget: SearchBudget = None) -> ClassificationReport:
    return _semi_positive_reports(*_normalized(tensor), _budget(budget))[0]


def check_strictly_semi_positive(tensor: Tensor, budget: SearchBudget = None) -> ClassificationReport:
    return _semi_positive_reports(*_normalized(tensor), _budget(budget))[1]


def _p0_report(normalized: Tensor, scale: float, budget: SearchBudget) -> ClassificationReport:
    value, point = _minimize(normalized, budget, _componentwise_product_extremal(normalized, support_only=True))
    return _violation_report(TensorClass.P0, budget, value, point, value < -budget.tolerance, scale)


def _p_report(normalized: Tensor, scale: float, budget: SearchBudget) -> ClassificationReport:
    extremal = _componentwise_product_extremal(normalized, support_only=False)
    # a P0 violator has every x_i (Ax^{m-1})_i < 0 on its support, so it violates P as well
    p0_report = _p0_report(normalized, scale, budget)
    if p0_report.violated:
        value = extremal.point(p0_report.witness)
        return _violation_report(TensorClass.P, budget, value, p0_report.witness, True, scale)

    value, point = _minimize(normalized, budget, extremal)
    return _violation_report(TensorClass.P, budget, value, point, value <= budget.tolerance, scale)


def check_P0(tensor: Tensor, budget: SearchBudget = None) -> ClassificationReport:
    return _p0_report(*_normalized(tensor), _budget(budget))


def check_P(tensor: Tensor, budget: SearchBudget = None) -> ClassificationReport:
    return _p_report(*_normalized(tensor), _budget(budget))


def copositivity_margin(tensor: Tensor, budget: SearchBudget = None) -> Tuple[float, np.ndarray]:
    normalized, scale = _normalized(tensor)
    value, point = _minimize(normalized, _budget(budget), _poly_extremal(normalized))
    return value * scale, point


def _copositive_reports(normalized: Tensor, scale: float, budget: SearchBudget):
    value, point = _minimize(normalized, budget, _poly_extremal(normalized))
    return (_violation_report(TensorClass.COPOSITIVE, budget, value, point, value < -budget.tolerance, scale),
            _violation_report(TensorClass.STRICTLY_COPOSITIVE, budget, value, point, value < budget.tolerance,
                              scale))


def check_copositive(tensor: Tensor, budget: SearchBudget = None) -> ClassificationReport:
    return _copositive_reports(*_normalized(tensor), _budget(budget))[0]


def check_strictly_copositive(tensor: Tensor, budget: SearchBudget = None) -> ClassificationReport:
    return _copositive_reports(*_normalized(tensor), _budget(budget))[1]


def max_min_image(tensor: Tensor, budget: SearchBudget = None) -> Tuple[float, np.ndarray]:
    """Best value of min_i (Ax^{m-1})_i over {x >= 0, ||x||_inf = 1} and where it was reached."""
    normalized, scale = _normalized(tensor)
    value, point = _minimize(normalized, _budget(budget), _negated_image_extremal(normalized))
    return -value * scale, point


def shift_to_interior(tensor: Tensor, point: np.ndarray, tolerance: float) -> Optional[np.ndarray]:
    """Moves a nonnegative point with positive image to y + t e, halving t until the image stays above tolerance."""
    shift = 0.5
    for _ in range(SHIFT_ATTEMPTS):
        candidate = point + shift
        candidate = candidate / candidate.max()
        if np.all(candidate > 0) and np.min(apply(tensor, candidate)) > tolerance:
            return candidate
        shift /= 2
    return None


def _s_reports(normalized: Tensor, scale: float,
               budget: SearchBudget) -> Tuple[ClassificationReport, ClassificationReport]:
    value, point = _minimize(normalized, budget, _negated_image_extremal(normalized))
    best = -value
    if not np.isfinite(best):
        return (ClassificationReport(TensorClass.S, Verdict.UNDETERMINED, budget),
                ClassificationReport(TensorClass.S0, Verdict.UNDETERMINED, budget))

    s_report = ClassificationReport(TensorClass.S, Verdict.UNDETERMINED, budget, extremal_value=best * scale)
    if best > budget.tolerance:
        witness = shift_to_interior(normalized, point, budget.tolerance)
        if witness is not None:
            s_report = ClassificationReport(TensorClass.S, Verdict.HOLDS, budget, witness=witness,
                                            witness_meaning=WitnessMeaning.CERTIFYING_VECTOR,
                                            extremal_value=best * scale)
        else:
            logger.info('S-candidate found but the interior shift did not keep the image positive')

    if best >= -budget.tolerance:
        s0_report = ClassificationReport(TensorClass.S0, Verdict.HOLDS, budget, witness=point,
                                         witness_meaning=WitnessMeaning.CERTIFYING_VECTOR,
                                         extremal_value=best * scale)
    else:
        s0_report = ClassificationReport(TensorClass.S0, Verdict.UNDETERMINED, budget, extremal_value=best * scale)
    return s_report, s0_report


def find_s_witness(tensor: Tensor, budget: SearchBudget = None) -> ClassificationReport:
    return _s_reports(*_normalized(tensor), _budget(budget))[0]


def find_s0_witness(tensor: Tensor, budget: SearchBudget = None) -> ClassificationReport:
    return _s_reports(*_normalized(tensor), _budget(budget))[1]


def find_r0_violation(tensor: Tensor, budget: SearchBudget = None) -> Tuple[float, np.ndarray]:
    """Smallest max(negativity of Ax^{m-1}, |Ax^m|) on the nonnegative unit sphere and its argmin."""
    normalized, scale = _normalized(tensor)
    value, point = _minimize(normalized, _budget(budget), _zero_solution_residual_extremal(normalized))
    return value * scale, point


def _r0_report(normalized: Tensor, scale: float, budget: SearchBudget) -> ClassificationReport:
    value, point = _minimize(normalized, budget, _zero_solution_residual_extremal(normalized))
    return _violation_report(TensorClass.R0, budget, value, point, value <= budget.tolerance, scale)


def check_R0(tensor: Tensor, budget: SearchBudget = None) -> ClassificationReport:
    return _r0_report(*_normalized(tensor), _budget(budget))


def classify_all(tensor: Tensor, budget: SearchBudget = None) -> ClassificationSummary:
    """Every class verdict, decided on the tensor rescaled by a power of two so that c A and A agree for c > 0."""
    budget = _budget(budget)
    normalized, scale = _normalized(tensor)
    semi_positive, strictly_semi_positive = _semi_positive_reports(normalized, scale, budget)
    copositive, strictly_copositive = _copositive_reports(normalized, scale, budget)
    s_report, s0_report = _s_reports(normalized, scale, budget)
    reports = [
        semi_positive,
        strictly_semi_positive,
        _p_report(normalized, scale, budget),
        _p0_report(normalized, scale, budget),
        copositive,
        strictly_copositive,
        s_report,
        s0_report,
        _r0_report(normalized, scale, budget),
    ]
    summary = ClassificationSummary(reports)
    for inconsistency in summary.inconsistencies:
        logger.warning(f'{inconsistency["premise"]} holds but {inconsistency["conclusion"]} is violated '
                       f'at this budget; consider a finer grid or more multistarts')
    return summary


CHECKS = {TensorClass.SEMI_POSITIVE: check_semi_positive,
          TensorClass.STRICTLY_SEMI_POSITIVE: check_strictly_semi_positive,
          TensorClass.P: check_P,
          TensorClass.P0: check_P0,
          TensorClass.COPOSITIVE: check_copositive,
          TensorClass.STRICTLY_COPOSITIVE: check_strictly_copositive,
          TensorClass.S: find_s_witness,
          TensorClass.S0: find_s0_witness,
          TensorClass.R0: check_R0}
