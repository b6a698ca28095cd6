import functools
import itertools

import numpy as np

from exceptions.exceptions import DimensionMismatchError, InvalidParameterError, TensorError
from tensor.tensor import Tensor

SUPPORT_CUTOFF = 1e-10
ROW_CHUNK_SIZE = 4096


def as_vector(values, dim: int = None) -> np.ndarray:
    try:
        vector = np.array(values, dtype=float)
    except (TypeError, ValueError) as exc:
        raise DimensionMismatchError(f'Vector must be a flat list of reals - {exc}')
    if vector.ndim != 1:
        raise DimensionMismatchError(f'Vector must be one-dimensional, got shape {vector.shape}')
    if dim is not None and vector.shape[0] != dim:
        raise DimensionMismatchError(f'Vector has length {vector.shape[0]}, expected {dim}')
    if not np.all(np.isfinite(vector)):
        raise TensorError('Vector entries must be finite')
    return vector


def _contract(entries: np.ndarray, x: np.ndarray) -> np.ndarray:
    return functools.reduce(np.dot, [entries] + [x] * (entries.ndim - 1))


def _lexicographic_contract(entries: np.ndarray, x: np.ndarray) -> np.ndarray:
    # each term is ((a_{i i2..im} x_{i2}) x_{i3}) ..., summed one by one over (i2, ..., im) in lexicographic order
    dim, order = entries.shape[0], entries.ndim
    terms = entries
    for axis in range(1, order):
        shape = [1] * order
        shape[axis] = dim
        terms = terms * x.reshape(shape)
    # add.accumulate runs strictly left to right, unlike the pairwise np.sum
    return np.add.accumulate(terms.reshape(dim, -1), axis=1)[:, -1]


def apply(tensor: Tensor, x) -> np.ndarray:
    """Ax^{m-1}: contraction of the last m-1 slots with x, in a fixed summation order."""
    x = as_vector(x, tensor.dim)
    return _lexicographic_contract(tensor.entries, x)


def poly_value(tensor: Tensor, x) -> float:
    """Ax^m = x . Ax^{m-1}."""
    x = as_vector(x, tensor.dim)
    return float(np.dot(x, _lexicographic_contract(tensor.entries, x)))


def poly_gradient(tensor: Tensor, x) -> np.ndarray:
    x = as_vector(x, tensor.dim)
    gradient = np.zeros(tensor.dim)
    for axis in range(tensor.order):
        gradient += _contract(np.moveaxis(tensor.entries, axis, 0), x)
    return gradient


def jacobian(tensor: Tensor, x) -> np.ndarray:
    """Jacobian of x -> Ax^{m-1}, row i holding the partials of component i."""
    x = as_vector(x, tensor.dim)
    result = np.zeros((tensor.dim, tensor.dim))
    for axis in range(1, tensor.order):
        moved = np.moveaxis(tensor.entries, axis, 1)
        result += functools.reduce(np.dot, [moved] + [x] * (tensor.order - 2))
    return result


def apply_rows(tensor: Tensor, points) -> np.ndarray:
    """Row-wise Ax^{m-1} for a batch of points of shape (N, n)."""
    points = np.atleast_2d(np.asarray(points, dtype=float))
    if points.shape[1] != tensor.dim:
        raise DimensionMismatchError(f'Points have {points.shape[1]} columns, expected {tensor.dim}')
    results = np.empty_like(points)
    last_axis = tensor.order - 1
    for start in range(0, points.shape[0], ROW_CHUNK_SIZE):
        chunk = points[start:start + ROW_CHUNK_SIZE]
        contracted = np.tensordot(chunk, tensor.entries, axes=([1], [last_axis]))
        for _ in range(tensor.order - 2):
            contracted = np.einsum('b...j,bj->b...', contracted, chunk)
        results[start:start + ROW_CHUNK_SIZE] = contracted
    return results


def poly_rows(tensor: Tensor, points) -> np.ndarray:
    points = np.atleast_2d(np.asarray(points, dtype=float))
    return np.einsum('bi,bi->b', points, apply_rows(tensor, points))


def is_symmetric(tensor: Tensor) -> bool:
    return tensor.is_symmetric()


def symmetrize(tensor: Tensor) -> Tensor:
    if tensor.is_symmetric():
        return tensor if tensor.symmetric_flag else Tensor(tensor.entries, symmetric=True)

    entries = tensor.entries
    permutations = list(itertools.permutations(range(tensor.order)))
    averaged = sum(np.transpose(entries, axes=permutation) for permutation in permutations) / len(permutations)

    # read every entry from its sorted index tuple so permuted positions are bit-identical
    index_grid = np.indices(entries.shape).reshape(tensor.order, -1)
    canonical = tuple(np.sort(index_grid, axis=0))
    return Tensor(averaged[canonical].reshape(entries.shape), symmetric=True)


def positive_part(v) -> np.ndarray:
    return np.maximum(as_vector(v), 0.0)


def norm(v, p: float) -> float:
    v = as_vector(v)
    if p == np.inf:
        return float(np.max(np.abs(v))) if v.size else 0.0
    if not p > 1:
        raise InvalidParameterError(f'Norm order must be > 1 or infinity, got {p}')
    return float(np.sum(np.abs(v) ** p) ** (1.0 / p))


def support(x, cutoff: float = SUPPORT_CUTOFF) -> np.ndarray:
    return np.flatnonzero(np.asarray(x) > cutoff)
