"""Distance-threshold neighborhoods.

The radius is not a free parameter: delta = max_dist / c_const, where
max_dist is the largest distance from any row to its nearest optimum. A row's
neighborhood is every other row strictly closer than delta; the row itself is
never its own neighbor.
"""

from dataclasses import dataclass

import numpy as np

from .errors import InputError
from .gower import DistanceMatrix


@dataclass(frozen=True)
class NeighborhoodSpec:
    """Derived radius: delta = max_dist / c_const."""

    max_dist: float
    delta: float
    c_const: int

    def __post_init__(self):
        if self.max_dist < 0.0:
            raise InputError("max_dist must be non-negative")
        if self.c_const < 1:
            raise InputError("c_const must be at least 1")
        if self.delta != self.max_dist / self.c_const:
            raise InputError("delta must equal max_dist / c_const")


def compute_spec(dist_to_optima, c_const: int) -> NeighborhoodSpec:
    """Radius spec from the per-row distances to the nearest optimum.

    Every distance 0 (a landscape where all rows are optimal) degenerates to
    delta = 0 and therefore to all-empty neighborhoods.
    """
    arr = np.asarray(dist_to_optima, dtype=np.float64)
    if arr.size == 0:
        raise InputError("cannot derive a radius from an empty distance list")
    if not isinstance(c_const, int) or isinstance(c_const, bool) or c_const < 1:
        raise InputError(f"c_const must be a positive integer, got {c_const!r}")
    max_dist = float(arr.max())
    return NeighborhoodSpec(max_dist=max_dist, delta=max_dist / c_const, c_const=c_const)


@dataclass(frozen=True)
class NeighborhoodIndex:
    """Per row, the sorted indices of all rows strictly within delta."""

    neighbors: tuple[np.ndarray, ...]
    spec: NeighborhoodSpec

    @property
    def n(self) -> int:
        return len(self.neighbors)

    def counts(self) -> np.ndarray:
        return np.array([len(a) for a in self.neighbors], dtype=np.int64)

    def empty_count(self) -> int:
        return int(sum(1 for a in self.neighbors if len(a) == 0))


def build_neighborhoods(matrix: DistanceMatrix, spec: NeighborhoodSpec) -> NeighborhoodIndex:
    """Threshold the distance matrix at delta (strict), excluding self."""
    full = matrix.full()
    mask = full < spec.delta
    np.fill_diagonal(mask, False)
    rows = []
    for i in range(matrix.n):
        nb = np.nonzero(mask[i])[0].astype(np.int64)
        nb.flags.writeable = False
        rows.append(nb)
    return NeighborhoodIndex(neighbors=tuple(rows), spec=spec)
