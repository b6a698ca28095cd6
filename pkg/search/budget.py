import numbers
from typing import Optional

import numpy as np

from exceptions.exceptions import InvalidParameterError

# largest dimension whose supports are enumerated by default
ENUMERATION_MAX_DIM = 4


class SearchBudget(object):
    """
    Resolution of a budget-relative search: grid spacing on the unit infinity-sphere,
    number of multistart descents, acceptance tolerance and the seed every RNG stream
    is derived from. Thread count is carried along but never changes a result.
    """
    DEFAULT_GRID_RESOLUTION = 1 / 32
    DEFAULT_MULTISTARTS = 64
    DEFAULT_TOLERANCE = 1e-8
    DEFAULT_SEED = 0

    FIELDS = ('grid_resolution', 'multistarts', 'tolerance', 'seed')

    def __init__(self, grid_resolution: float = None, multistarts: int = None, tolerance: float = None,
                 seed: int = None, threads: Optional[int] = None) -> None:
        self.grid_resolution = float(self.DEFAULT_GRID_RESOLUTION if grid_resolution is None else grid_resolution)
        self.multistarts = self.DEFAULT_MULTISTARTS if multistarts is None else multistarts
        self.tolerance = float(self.DEFAULT_TOLERANCE if tolerance is None else tolerance)
        self.seed = self.DEFAULT_SEED if seed is None else seed
        self.threads = threads
        self._validate()

    def _validate(self) -> None:
        if not 0 < self.grid_resolution <= 1:
            raise InvalidParameterError(f'grid_resolution must be in (0, 1], got {self.grid_resolution}')
        if not isinstance(self.multistarts, numbers.Integral) or self.multistarts < 1:
            raise InvalidParameterError(f'multistarts must be a positive integer, got {self.multistarts}')
        if not self.tolerance > 0:
            raise InvalidParameterError(f'tolerance must be positive, got {self.tolerance}')
        if not isinstance(self.seed, numbers.Integral) or self.seed < 0:
            raise InvalidParameterError(f'seed must be a nonnegative integer, got {self.seed}')
        if self.threads is not None and (not isinstance(self.threads, numbers.Integral) or self.threads < 1):
            raise InvalidParameterError(f'threads must be a positive integer, got {self.threads}')
        self.multistarts = int(self.multistarts)
        self.seed = int(self.seed)

    @property
    def grid_steps(self) -> int:
        return max(1, int(round(1 / self.grid_resolution)))

    def rng(self, stream: int) -> np.random.Generator:
        return np.random.default_rng([self.seed, int(stream)])

    def replace(self, **overrides) -> 'SearchBudget':
        values = self.to_dict()
        values['threads'] = self.threads
        values.update({key: value for key, value in overrides.items() if value is not None})
        return SearchBudget(**values)

    def to_dict(self) -> dict:
        return {'grid_resolution': self.grid_resolution,
                'multistarts': self.multistarts,
                'tolerance': self.tolerance,
                'seed': self.seed}

    def __eq__(self, other) -> bool:
        if not isinstance(other, SearchBudget):
            return NotImplemented
        return self.to_dict() == other.to_dict()

    def __repr__(self) -> str:
        return f'SearchBudget({self.to_dict()})'
