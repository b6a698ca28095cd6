from typing import Dict, Tuple

import numpy as np

from exceptions.exceptions import TensorError


class Tensor(object):
    """
    Dense real m-order n-dimensional tensor.

    Entries are held in a read-only numpy array of shape (n,) * m, indexed 0-based.
    The symmetric flag is a claim; it is only checked when a consumer calls
    check_symmetry_claim().
    """

    def __init__(self, entries, symmetric: bool = False) -> None:
        try:
            array = np.array(entries, dtype=float)
        except (TypeError, ValueError) as exc:
            raise TensorError(f'Tensor entries must form a dense real array - {exc}')

        if array.ndim < 2:
            raise TensorError(f'Tensor order must be at least 2, got {array.ndim}')

        dim = array.shape[0]
        if dim < 1 or any(size != dim for size in array.shape):
            raise TensorError(f'Tensor must have equal dimensions on every axis, got shape {array.shape}')

        if not np.all(np.isfinite(array)):
            raise TensorError('Tensor entries must be finite (NaN and Inf are rejected)')

        array.setflags(write=False)
        self._entries = array
        self._symmetric_flag = bool(symmetric)

    @property
    def order(self) -> int:
        return self._entries.ndim

    @property
    def dim(self) -> int:
        return self._entries.shape[0]

    @property
    def entries(self) -> np.ndarray:
        return self._entries

    @property
    def symmetric_flag(self) -> bool:
        return self._symmetric_flag

    def is_symmetric(self) -> bool:
        # adjacent transpositions generate every index permutation
        for axis in range(self.order - 1):
            swapped = np.swapaxes(self._entries, axis, axis + 1)
            if not np.array_equal(self._entries, swapped):
                return False
        return True

    def check_symmetry_claim(self) -> None:
        if self._symmetric_flag and not self.is_symmetric():
            raise TensorError('Tensor is flagged symmetric but its entries are not permutation invariant')

    def scaled(self, factor: float) -> 'Tensor':
        return Tensor(self._entries * float(factor), symmetric=self._symmetric_flag)

    def negated(self) -> 'Tensor':
        return self.scaled(-1.0)

    @classmethod
    def zeros(cls, order: int, dim: int) -> 'Tensor':
        return cls(np.zeros((dim,) * order), symmetric=True)

    @classmethod
    def ones(cls, order: int, dim: int) -> 'Tensor':
        return cls(np.ones((dim,) * order), symmetric=True)

    @classmethod
    def identity(cls, order: int, dim: int, scale: float = 1.0) -> 'Tensor':
        return cls.diagonal(order, [scale] * dim)

    @classmethod
    def diagonal(cls, order: int, values) -> 'Tensor':
        values = list(values)
        dim = len(values)
        entries = np.zeros((dim,) * order)
        for index, value in enumerate(values):
            entries[(index,) * order] = value
        return cls(entries, symmetric=True)

    @classmethod
    def from_entries(cls, order: int, dim: int, entries: Dict[Tuple[int, ...], float],
                     symmetric: bool = False) -> 'Tensor':
        if order < 2:
            raise TensorError(f'Tensor order must be at least 2, got {order}')
        if dim < 1:
            raise TensorError(f'Tensor dimension must be at least 1, got {dim}')
        array = np.zeros((dim,) * order)
        for index, value in entries.items():
            array[tuple(index)] = value
        return cls(array, symmetric=symmetric)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Tensor):
            return NotImplemented
        return self._symmetric_flag == other._symmetric_flag and np.array_equal(self._entries, other._entries)

    def __hash__(self):
        return hash((self.order, self.dim, self._entries.tobytes()))

    def __repr__(self) -> str:
        return f'Tensor(order={self.order}, dim={self.dim}, symmetric={self._symmetric_flag})'
