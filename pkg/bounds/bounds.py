"""
Global upper bounds on TCP solutions of strictly semi-positive tensors.

Each bound compares ||x||^{m-1} in one norm against ||(-q)_+|| in the dual-exponent norm
divided by an extremal constant: lambda(A) for the m-norm, mu(A) for the 2-norm and
beta(A) for the infinity-norm. The constants are inputs and are never recomputed here.
"""
from typing import Iterable, List, Optional

import numpy as np

from exceptions.exceptions import InvalidParameterError
from tcp.instance import TCPInstance
from tensor.operations import as_vector, norm, positive_part

SATISFACTION_SLACK = 1e-10


class BoundKind(object):
    M_NORM = 'MNorm'
    TWO_NORM = 'TwoNorm'
    INF_NORM = 'InfNorm'


class BoundReport(object):
    def __init__(self, kind: str, lhs: float, rhs: float, constant_used: float) -> None:
        self.kind = kind
        self.lhs = lhs
        self.rhs = rhs
        self.constant_used = constant_used

    @property
    def slack(self) -> float:
        return self.rhs - self.lhs

    @property
    def satisfied(self) -> bool:
        return self.lhs <= self.rhs + SATISFACTION_SLACK

    def to_dict(self) -> dict:
        return {'kind': self.kind,
                'lhs': float(self.lhs),
                'rhs': float(self.rhs),
                'constant_used': float(self.constant_used),
                'satisfied': self.satisfied,
                'slack': float(self.slack)}

    def __repr__(self) -> str:
        return f'BoundReport({self.kind}: {self.lhs!r} <= {self.rhs!r})'


def _bound(kind: str, instance: TCPInstance, x, constant: float, p: float, dual_p: float) -> BoundReport:
    if not constant > 0:
        raise InvalidParameterError(f'{kind} bound needs a positive constant, got {constant}')
    x = as_vector(x, instance.dim)
    lhs = norm(x, p) ** (instance.order - 1)
    rhs = norm(positive_part(-instance.q), dual_p) / constant
    return BoundReport(kind, float(lhs), float(rhs), float(constant))


def bound_m_norm(instance: TCPInstance, x, lambda_val: float) -> BoundReport:
    """||x||_m^{m-1} <= ||(-q)_+||_{m/(m-1)} / lambda(A)."""
    order = instance.order
    return _bound(BoundKind.M_NORM, instance, x, lambda_val, order, order / (order - 1))


def bound_2_norm(instance: TCPInstance, x, mu_val: float) -> BoundReport:
    """||x||_2^{m-1} <= ||(-q)_+||_2 / mu(A)."""
    return _bound(BoundKind.TWO_NORM, instance, x, mu_val, 2, 2)


def bound_inf_norm(instance: TCPInstance, x, beta_val: float) -> BoundReport:
    """||x||_inf^{m-1} <= ||(-q)_+||_inf / beta(A); needs no symmetry."""
    return _bound(BoundKind.INF_NORM, instance, x, beta_val, np.inf, np.inf)


def evaluate_bounds(instance: TCPInstance, solutions: Iterable, lambda_val: Optional[float] = None,
                    mu_val: Optional[float] = None, beta_val: Optional[float] = None) -> List[BoundReport]:
    """Every supplied constant against every solution, solution-major; None constants are skipped."""
    checks = [(bound_m_norm, lambda_val), (bound_2_norm, mu_val), (bound_inf_norm, beta_val)]
    reports = []
    for x in solutions:
        for bound, constant in checks:
            if constant is not None:
                reports.append(bound(instance, x, constant))
    return reports
