"""
Boundedness probe for Gamma(q, s, t) = {x >= 0 : q + Ax^{m-1} >= 0, x.q + t Ax^m <= s}.

An escape direction x' >= 0 on the unit sphere with Ax'^{m-1} >= 0 and Ax'^m = 0 makes every
such set unbounded, and is exactly a witness against R0; the escape search therefore shares
its extremal search with the R0 check so both verdicts agree at one budget. Without one, the
probe looks for members on shells of growing radius.
"""
from typing import List, Optional

import numpy as np

from classify.classification import check_R0
from exceptions.exceptions import InvalidParameterError
from search.budget import ENUMERATION_MAX_DIM, SearchBudget
from search.grid import nonnegative_sphere_grid, random_nonnegative_sphere_point
from tcp.instance import TCPInstance, TCPSolution
from tcp.solvers import solve_enumerate, solve_merit
from tensor.operations import apply_rows, as_vector
from tensor.tensor import Tensor
from utils.log import get_logger

logger = get_logger(__name__)

MAX_CAP_EXPONENT = 10
SHELL_RADII = np.linspace(0.5, 1.0, 9)
DIRECTION_CAP = 4096


class GammaVerdict(object):
    LIKELY_BOUNDED = 'LikelyBounded'
    UNBOUNDED_WITNESS = 'UnboundedWitness'
    UNDETERMINED = 'Undetermined'


class GammaProbe(object):
    def __init__(self, q: np.ndarray, s: float, t: float, members_found: List[np.ndarray],
                 escape_direction: Optional[np.ndarray], verdict: str, caps_probed: List[float],
                 budget: SearchBudget) -> None:
        self.q = q
        self.s = s
        self.t = t
        self.members_found = members_found
        self.escape_direction = escape_direction
        self.verdict = verdict
        self.caps_probed = caps_probed
        self.budget = budget

    @property
    def largest_member_norm(self) -> float:
        return max([float(np.max(np.abs(member))) for member in self.members_found], default=0.0)

    def to_dict(self) -> dict:
        return {'q': [float(value) for value in self.q],
                's': float(self.s),
                't': float(self.t),
                'members_found': [[float(value) for value in member] for member in self.members_found],
                'escape_direction': None if self.escape_direction is None
                else [float(value) for value in self.escape_direction],
                'verdict': self.verdict,
                'caps_probed': [float(cap) for cap in self.caps_probed],
                'largest_member_norm': self.largest_member_norm,
                'budget': self.budget.to_dict()}


def _membership(tensor: Tensor, q: np.ndarray, s: float, t: float, points: np.ndarray, tol: float) -> np.ndarray:
    images = apply_rows(tensor, points)
    feasible = np.all(q + images >= -tol, axis=1) & np.all(points >= 0, axis=1)
    level = points.dot(q) + t * np.einsum('bi,bi->b', points, images)
    return feasible & (level <= s + tol)


def _solution_seeds(tensor: Tensor, q: np.ndarray, budget: SearchBudget) -> List[np.ndarray]:
    instance = TCPInstance(tensor, q)
    if tensor.dim <= ENUMERATION_MAX_DIM:
        return [solution.x for solution in solve_enumerate(instance, budget)]
    outcome = solve_merit(instance, budget)
    return [outcome.x] if isinstance(outcome, TCPSolution) and outcome.verified else []


def _shell_directions(dim: int, budget: SearchBudget) -> np.ndarray:
    grid = nonnegative_sphere_grid(dim, budget.grid_resolution, cap=DIRECTION_CAP)
    extra = [random_nonnegative_sphere_point(budget.rng(index), dim) for index in range(budget.multistarts)]
    return np.concatenate([grid, np.array(extra)])


def gamma_probe(tensor: Tensor, q, s: float, t: float, budget: SearchBudget = None) -> GammaProbe:
    budget = budget if budget is not None else SearchBudget()
    if not t > 0:
        raise InvalidParameterError(f'Gamma probe needs t > 0, got {t}')
    q = as_vector(q, tensor.dim)
    tol = budget.tolerance

    r0_report = check_R0(tensor, budget)
    escape_direction = r0_report.witness if r0_report.violated else None

    members = [x for x in _solution_seeds(tensor, q, budget)
               if _membership(tensor, q, s, t, x[None, :], tol)[0]]

    directions = _shell_directions(tensor.dim, budget)
    caps = [2.0 ** exponent for exponent in range(MAX_CAP_EXPONENT + 1)]
    for cap in caps:
        points = (directions[:, None, :] * (SHELL_RADII * cap)[None, :, None]).reshape(-1, tensor.dim)
        inside = np.flatnonzero(_membership(tensor, q, s, t, points, tol))
        if inside.size:
            norms = np.max(points[inside], axis=1)
            members.append(points[inside[int(np.argmax(norms))]])

    probe = GammaProbe(q, s, t, members, escape_direction, GammaVerdict.UNDETERMINED, caps, budget)
    if escape_direction is not None:
        probe.verdict = GammaVerdict.UNBOUNDED_WITNESS
    elif probe.largest_member_norm < caps[-1] / 2:
        probe.verdict = GammaVerdict.LIKELY_BOUNDED
    logger.debug(f'Gamma probe over {len(caps)} caps: {probe.verdict}, largest member {probe.largest_member_norm!r}')
    return probe
