"""
Point sets on the unit infinity-sphere.

The nonnegative sphere {x >= 0, max x_i = 1} is the union of n faces {x_k = 1, 0 <= x_i <= 1};
the signed sphere {max |x_i| = 1} is the union of 2n faces {x_k = +-1, -1 <= x_i <= 1}.
Every face is gridded with the same axis values, so corners and face edges are always included.
"""
import numpy as np

from utils.log import get_logger

logger = get_logger(__name__)

GRID_POINT_CAP = 60000


def coarsened_steps(dim: int, steps: int, signed: bool = False, cap: int = GRID_POINT_CAP) -> int:
    """Halves the steps per unit until the whole sphere grid fits under the point cap."""
    faces = 2 * dim if signed else dim
    span = 2 if signed else 1
    effective = max(1, steps)
    while effective > 1 and faces * (span * effective + 1) ** (dim - 1) > cap:
        effective //= 2
    if effective != steps:
        logger.debug(f'Grid coarsened from {steps} to {effective} steps per unit for dimension {dim}')
    return effective


def face_points(dim: int, face: int, axis_values: np.ndarray, pinned_value: float = 1.0) -> np.ndarray:
    free = dim - 1
    if free == 0:
        return np.full((1, 1), pinned_value)
    mesh = np.meshgrid(*([axis_values] * free), indexing='ij')
    free_points = np.stack(mesh, axis=-1).reshape(-1, free)
    return np.insert(free_points, face, pinned_value, axis=1)


def nonnegative_face_grid(dim: int, face: int, resolution: float, cap: int = GRID_POINT_CAP) -> np.ndarray:
    steps = coarsened_steps(dim, int(round(1 / resolution)), cap=cap * dim)
    return face_points(dim, face, np.linspace(0.0, 1.0, steps + 1))


def nonnegative_sphere_grid(dim: int, resolution: float, cap: int = GRID_POINT_CAP) -> np.ndarray:
    steps = coarsened_steps(dim, int(round(1 / resolution)), cap=cap)
    axis_values = np.linspace(0.0, 1.0, steps + 1)
    faces = [face_points(dim, face, axis_values) for face in range(dim)]
    return np.unique(np.concatenate(faces), axis=0)


def signed_sphere_grid(dim: int, resolution: float, cap: int = GRID_POINT_CAP) -> np.ndarray:
    steps = coarsened_steps(dim, int(round(1 / resolution)), signed=True, cap=cap)
    axis_values = np.linspace(-1.0, 1.0, 2 * steps + 1)
    faces = [face_points(dim, face, axis_values, sign) for face in range(dim) for sign in (1.0, -1.0)]
    return np.unique(np.concatenate(faces), axis=0)


def project_nonnegative_sphere(y: np.ndarray) -> np.ndarray:
    clipped = np.maximum(y, 0.0)
    peak = clipped.max()
    if not peak > 0:
        return np.ones_like(y)
    return clipped / peak


def project_signed_sphere(y: np.ndarray) -> np.ndarray:
    peak = np.abs(y).max()
    if not peak > 0:
        return np.ones_like(y)
    return y / peak


def random_nonnegative_sphere_point(rng: np.random.Generator, dim: int) -> np.ndarray:
    return project_nonnegative_sphere(rng.random(dim))


def random_signed_sphere_point(rng: np.random.Generator, dim: int) -> np.ndarray:
    return project_signed_sphere(rng.uniform(-1.0, 1.0, dim))
