import json
from typing import List, Optional

import numpy as np

from exceptions.exceptions import SerializationError
from tensor.io import tensor_from_dict, tensor_to_dict, vector_from_list, read_text
from tensor.operations import apply, as_vector
from tensor.tensor import Tensor


class TCPInstance(object):
    """The pair (A, q) of TCP(A, q): find x >= 0 with w = q + Ax^{m-1} >= 0 and x.w = 0."""

    def __init__(self, tensor: Tensor, q) -> None:
        self.tensor = tensor
        self.q = as_vector(q, tensor.dim)
        self.q.setflags(write=False)

    @property
    def dim(self) -> int:
        return self.tensor.dim

    @property
    def order(self) -> int:
        return self.tensor.order

    def slack(self, x) -> np.ndarray:
        return self.q + apply(self.tensor, x)

    def scaled(self, factor: float) -> 'TCPInstance':
        return TCPInstance(self.tensor.scaled(factor), self.q * factor)

    def to_dict(self) -> dict:
        return {'tensor': tensor_to_dict(self.tensor),
                'q': [float(value) for value in self.q]}

    @staticmethod
    def from_dict(instance_dict: dict) -> 'TCPInstance':
        if not isinstance(instance_dict, dict) or 'tensor' not in instance_dict or 'q' not in instance_dict:
            raise SerializationError('Instance document must be a JSON object with "tensor" and "q"')
        tensor = tensor_from_dict(instance_dict['tensor'])
        return TCPInstance(tensor, vector_from_list(instance_dict['q'], tensor.dim))


def parse_instance(text: str) -> TCPInstance:
    try:
        document = json.loads(text)
    except ValueError as exc:
        raise SerializationError(f'Instance document is not valid JSON - {exc}')
    return TCPInstance.from_dict(document)


def serialize_instance(instance: TCPInstance) -> str:
    return json.dumps(instance.to_dict(), indent=2)


def load_instance(path: str) -> TCPInstance:
    return parse_instance(read_text(path))


class SolveMethod(object):
    ENUMERATE = 'Enumerate'
    MERIT = 'Merit'


class SolutionResiduals(object):
    def __init__(self, x_neg: float, w_neg: float, compl: float) -> None:
        self.x_neg = x_neg
        self.w_neg = w_neg
        self.compl = compl

    def max(self) -> float:
        return max(self.x_neg, self.w_neg, self.compl)

    def to_dict(self) -> dict:
        return {'x_neg': self.x_neg, 'w_neg': self.w_neg, 'compl': self.compl}


class TCPSolution(object):
    def __init__(self, x: np.ndarray, w: np.ndarray, residuals: SolutionResiduals, method: Optional[str],
                 tolerance: float) -> None:
        self.x = x
        self.w = w
        self.residuals = residuals
        self.method = method
        self.tolerance = tolerance

    @property
    def verified(self) -> bool:
        return self.residuals.max() <= self.tolerance

    def to_dict(self) -> dict:
        return {'x': [float(value) for value in self.x],
                'w': [float(value) for value in self.w],
                'residuals': self.residuals.to_dict(),
                'method': self.method,
                'verified': self.verified}


class MeritNotFound(object):
    """solve_merit found no iterate under tolerance; carries the best merit value and iterate."""

    def __init__(self, best_merit: float, best_iterate: np.ndarray, starts: int) -> None:
        self.best_merit = best_merit
        self.best_iterate = best_iterate
        self.starts = starts

    def to_dict(self) -> dict:
        return {'not_found': True,
                'best_merit': float(self.best_merit),
                'best_iterate': [float(value) for value in self.best_iterate],
                'starts': self.starts}


def solutions_from_document(document, dim: int) -> List[np.ndarray]:
    """Accepts a list of vectors or a list of serialized solutions with an "x" field."""
    if not isinstance(document, list):
        raise SerializationError('Solutions document must be a JSON list')
    vectors = []
    for item in document:
        if isinstance(item, dict):
            if 'x' not in item:
                raise SerializationError('Serialized solutions need an "x" field')
            item = item['x']
        vectors.append(vector_from_list(item, dim))
    return vectors


def load_solutions(path: str, dim: int) -> List[np.ndarray]:
    try:
        document = json.loads(read_text(path))
    except ValueError as exc:
        raise SerializationError(f'Solutions document is not valid JSON - {exc}')
    return solutions_from_document(document, dim)
