"""Mixed-type Gower dissimilarity and the pairwise distance machinery.

The distance between two configurations is a weighted mean of per-feature
dissimilarities: a numeric feature contributes |a - b| / (max - min) over its
normalization range, a categorical feature contributes a 0/1 mismatch, and a
feature missing on either side drops out (weight 0). Distances land in
[0, 1]; a pair of rows with no jointly observed feature is an error.

Accumulation always runs in schema feature order, and the matrix builder may
split rows across worker threads only because each entry's arithmetic is
independent of the partitioning; either way the result is bit-identical.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import InputError
from .ingest import NUMERIC, FeatureSpec, LandscapeSample, Schema

Range = tuple[float, float] | None


def feature_dissimilarity(a, b, spec: FeatureSpec, rng: Range) -> tuple[float, float]:
    """Per-feature contribution (d_j, w_j) to the Gower distance.

    Missing on either side yields weight 0. A numeric feature whose
    normalization range has zero width carries no signal: its distance is 0
    but it keeps weight 1.
    """
    if a is None or b is None:
        return 0.0, 0.0
    if spec.kind == NUMERIC:
        lo, hi = rng
        span = hi - lo
        if span == 0.0:
            return 0.0, 1.0
        return abs(a - b) / span, 1.0
    return (0.0 if a == b else 1.0), 1.0


def gower_distance(x, y, schema: Schema, ranges) -> float:
    """Gower distance between two configuration rows.

    delta(x, y) = sum_j w_j d_j / sum_j w_j, accumulated in feature order.
    """
    num = 0.0
    den = 0.0
    for j, spec in enumerate(schema.features):
        d, w = feature_dissimilarity(x[j], y[j], spec, ranges[j])
        num += d * w
        den += w
    if den == 0.0:
        raise InputError("the two configurations share no observed feature")
    # guard against float dust pushing a weighted mean of [0,1] terms past 1
    return min(num / den, 1.0)


class DistanceMatrix:
    """Symmetric pairwise distances, stored as the strict lower triangle.

    Entry (i, j) with i > j lives at index i*(i-1)/2 + j of the condensed
    vector. The diagonal is zero by construction and never stored.
    """

    __slots__ = ("n", "_tril", "_square")

    def __init__(self, n: int, condensed):
        data = np.ascontiguousarray(condensed, dtype=np.float64)
        expected = n * (n - 1) // 2
        if n < 1 or data.shape != (expected,):
            raise ValueError(f"condensed length {data.shape} does not match n={n}")
        if data.size and (float(data.min()) < 0.0 or float(data.max()) > 1.0):
            raise ValueError("distances must lie in [0, 1]")
        data.flags.writeable = False
        self.n = n
        self._tril = data
        self._square = None

    def condensed(self) -> np.ndarray:
        return self._tril

    def full(self) -> np.ndarray:
        """Dense symmetric square with zero diagonal (cached, read-only)."""
        if self._square is None:
            m = np.zeros((self.n, self.n), dtype=np.float64)
            i, j = np.tril_indices(self.n, k=-1)
            m[i, j] = self._tril
            m[j, i] = self._tril
            m.flags.writeable = False
            self._square = m
        return self._square

    def get(self, i: int, j: int) -> float:
        if not (0 <= i < self.n and 0 <= j < self.n):
            raise IndexError(f"pair ({i}, {j}) out of range for n={self.n}")
        if i == j:
            return 0.0
        lo, hi = (i, j) if i < j else (j, i)
        return float(self._tril[hi * (hi - 1) // 2 + lo])

    def row(self, i: int) -> np.ndarray:
        return self.full()[i]

    def mean_pairwise(self) -> float:
        if self._tril.size == 0:
            raise ValueError("no pairs in a 1-row matrix")
        return float(self._tril.mean())


def _encoded_columns(sample: LandscapeSample):
    """Per-feature arrays: numeric as floats with NaN holes, labels as codes."""
    cols = []
    for j, spec in enumerate(sample.schema.features):
        if spec.kind == NUMERIC:
            vals = np.array(
                [np.nan if row[j] is None else float(row[j]) for row in sample.configs],
                dtype=np.float64,
            )
            lo, hi = sample.ranges[j]
            cols.append((NUMERIC, vals, hi - lo))
        else:
            codes: dict[str, int] = {}
            arr = np.empty(sample.n, dtype=np.int64)
            for i, row in enumerate(sample.configs):
                v = row[j]
                arr[i] = -1 if v is None else codes.setdefault(v, len(codes))
            cols.append(("categorical", arr, None))
    return cols


def distance_matrix(sample: LandscapeSample, workers: int = 1) -> DistanceMatrix:
    """All pairwise Gower distances for a sample.

    Row blocks may go to worker threads; every entry is computed by the same
    elementwise operations in the same feature order regardless of the block
    layout, so the output is bit-identical for any worker count.
    """
    if not isinstance(workers, int) or workers < 1:
        raise InputError(f"workers must be a positive integer, got {workers!r}")
    n = sample.n
    cols = _encoded_columns(sample)
    num = np.zeros((n, n), dtype=np.float64)
    den = np.zeros((n, n), dtype=np.float64)

    def fill(lo: int, hi: int) -> None:
        for kind, col, span in cols:
            a = col[lo:hi, None]
            b = col[None, :]
            if kind == NUMERIC:
                both = ~(np.isnan(a) | np.isnan(b))
                w = both.astype(np.float64)
                if span > 0.0:
                    d = np.abs(a - b) / span
                    d[~both] = 0.0
                else:
                    d = np.zeros_like(w)
            else:
                both = (a >= 0) & (b >= 0)
                w = both.astype(np.float64)
                d = ((a != b) & both).astype(np.float64)
            num[lo:hi] += d * w
            den[lo:hi] += w

    nworkers = min(workers, n)
    if nworkers == 1:
        fill(0, n)
    else:
        step = -(-n // nworkers)
        blocks = [(s, min(s + step, n)) for s in range(0, n, step)]
        with ThreadPoolExecutor(max_workers=nworkers) as pool:
            list(pool.map(lambda blk: fill(*blk), blocks))

    off_diag_zero = (den == 0.0) & ~np.eye(n, dtype=bool)
    if off_diag_zero.any():
        lower = np.argwhere(off_diag_zero & np.tri(n, k=-1, dtype=bool))
        i, j = (int(v) for v in lower[0])
        raise InputError(f"configurations {j} and {i} share no observed feature")

    delta = np.divide(num, den, out=np.zeros_like(num), where=den > 0.0)
    np.minimum(delta, 1.0, out=delta)
    ti, tj = np.tril_indices(n, k=-1)
    return DistanceMatrix(n, delta[ti, tj])


@dataclass(frozen=True)
class OptimaSet:
    """Row indices tied for the best fitness, plus that fitness value."""

    indices: tuple[int, ...]
    optimal_fitness: float

    def __post_init__(self):
        object.__setattr__(self, "indices", tuple(int(i) for i in self.indices))
        if not self.indices:
            raise ValueError("an optima set cannot be empty")


def find_optima(sample: LandscapeSample) -> OptimaSet:
    """All rows attaining the best fitness; ties are all included."""
    f = sample.fitness
    best = float(f.max() if sample.params.maximize else f.min())
    idx = np.nonzero(f == best)[0]
    return OptimaSet(tuple(int(i) for i in idx), best)


def distances_to_optima(matrix: DistanceMatrix, optima: OptimaSet) -> np.ndarray:
    """Per row, the distance to the nearest optimum: d*(y) = min over x*."""
    idx = np.asarray(optima.indices, dtype=np.int64)
    if idx.min() < 0 or idx.max() >= matrix.n:
        raise ValueError("optima indices out of range")
    out = matrix.full()[idx].min(axis=0)
    out.flags.writeable = False
    return out
