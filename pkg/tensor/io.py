import json
import numbers

import numpy as np

from exceptions.exceptions import SerializationError, TensorError, DimensionMismatchError
from tensor.operations import as_vector
from tensor.tensor import Tensor


def _is_real_number(value) -> bool:
    return isinstance(value, numbers.Real) and not isinstance(value, bool)


def _read_int(document: dict, key: str, minimum: int) -> int:
    value = document.get(key)
    if not isinstance(value, int) or isinstance(value, bool):
        raise SerializationError(f'Tensor document field "{key}" must be an integer')
    if value < minimum:
        raise SerializationError(f'Tensor document field "{key}" must be at least {minimum}, got {value}')
    return value


def _loads(text: str, what: str):
    try:
        return json.loads(text)
    except ValueError as exc:
        raise SerializationError(f'{what} is not valid JSON - {exc}')


def tensor_from_dict(document) -> Tensor:
    if not isinstance(document, dict):
        raise SerializationError('Tensor document must be a JSON object')

    order = _read_int(document, 'order', minimum=2)
    dim = _read_int(document, 'dim', minimum=1)
    symmetric = document.get('symmetric', False)
    if not isinstance(symmetric, bool):
        raise SerializationError('Tensor document field "symmetric" must be a boolean')

    raw_entries = document.get('entries', [])
    if not isinstance(raw_entries, list):
        raise SerializationError('Tensor document field "entries" must be a list')

    values = dict()
    for entry in raw_entries:
        if not isinstance(entry, dict) or 'idx' not in entry or 'val' not in entry:
            raise SerializationError(f'Every tensor entry needs "idx" and "val", got {entry!r}')
        idx = entry['idx']
        if not isinstance(idx, list) or len(idx) != order:
            raise SerializationError(f'Entry index {idx!r} must list exactly {order} indices')
        if any(not isinstance(i, int) or isinstance(i, bool) for i in idx):
            raise SerializationError(f'Entry index {idx!r} must contain integers')
        if any(i < 1 or i > dim for i in idx):
            raise SerializationError(f'Entry index {idx} is out of range 1..{dim}')
        key = tuple(i - 1 for i in idx)
        if key in values:
            raise SerializationError(f'Duplicate entry index {idx}')
        val = entry['val']
        if not _is_real_number(val):
            raise SerializationError(f'Entry value at {idx} must be a number, got {val!r}')
        values[key] = float(val)

    try:
        tensor = Tensor.from_entries(order, dim, values, symmetric=symmetric)
        tensor.check_symmetry_claim()
        return tensor
    except TensorError as exc:
        raise SerializationError(exc.message)


def tensor_to_dict(tensor: Tensor) -> dict:
    entries = []
    for index in np.argwhere(tensor.entries != 0):
        entries.append({'idx': [int(i) + 1 for i in index],
                        'val': float(tensor.entries[tuple(index)])})
    return {'order': tensor.order,
            'dim': tensor.dim,
            'entries': entries,
            'symmetric': tensor.symmetric_flag}


def parse_tensor(text: str) -> Tensor:
    return tensor_from_dict(_loads(text, 'Tensor document'))


def serialize_tensor(tensor: Tensor) -> str:
    return json.dumps(tensor_to_dict(tensor), indent=2)


def vector_from_list(values, dim: int = None) -> np.ndarray:
    if not isinstance(values, list) or any(not _is_real_number(value) for value in values):
        raise SerializationError(f'Vector must be a JSON array of numbers, got {values!r}')
    try:
        return as_vector(values, dim)
    except TensorError as exc:
        raise SerializationError(exc.message)


def parse_vector(text: str, dim: int = None) -> np.ndarray:
    return vector_from_list(_loads(text, 'Vector document'), dim)


def parse_vector_option(text: str, dim: int = None) -> np.ndarray:
    """Comma separated command line vector such as '1,0'."""
    try:
        values = [float(part) for part in text.split(',') if part.strip() != '']
    except ValueError:
        raise SerializationError(f'Could not parse vector {text!r}, expected comma separated numbers')
    try:
        return as_vector(values, dim)
    except (TensorError, DimensionMismatchError) as exc:
        raise SerializationError(exc.message)


def read_text(path: str) -> str:
    try:
        with open(path, 'r') as file_obj:
            return file_obj.read()
    except OSError as exc:
        raise SerializationError(f'Could not read {path} - {exc.strerror}')


def load_tensor(path: str) -> Tensor:
    return parse_tensor(read_text(path))
