"""Core landscape analyses: fitness-distance correlation, binning, locality,
neutrality.

All binned summaries share one FitnessBinning: c_const equal-width bins over
[0, max_fitness], lower edges closed, top bin closed above. Box statistics
use quartiles with linear interpolation between order statistics.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import InputError
from .ingest import AnalysisParams, LandscapeSample
from .neighborhood import NeighborhoodIndex


@dataclass(frozen=True)
class FdcResult:
    """Fitness versus distance-to-nearest-optimum, with its least squares fit.

    slope/intercept describe the regression of fitness on distance. The
    correlation coefficient is None when either variable has zero variance;
    a constant-fitness landscape still reports slope 0 because a flat fit is
    well defined there.
    """

    points: tuple[tuple[float, float], ...]
    slope: float | None
    intercept: float | None
    coefficient: float | None


def fdc(sample: LandscapeSample, dist_to_optima) -> FdcResult:
    """Fitness-distance correlation over (d*(y), f(y)) pairs in row order."""
    d = np.asarray(dist_to_optima, dtype=np.float64)
    f = sample.fitness
    if d.shape != f.shape:
        raise ValueError("distance vector length does not match sample size")
    points = tuple((float(a), float(b)) for a, b in zip(d, f))
    if bool(np.all(f == f[0])):
        return FdcResult(points, 0.0, float(f[0]), None)
    if bool(np.all(d == d[0])):
        return FdcResult(points, None, None, None)
    dc = d - d.mean()
    fc = f - f.mean()
    sxx = float(dc @ dc)
    sxy = float(dc @ fc)
    syy = float(fc @ fc)
    slope = sxy / sxx
    intercept = float(f.mean()) - slope * float(d.mean())
    coefficient = sxy / math.sqrt(sxx * syy)
    coefficient = max(-1.0, min(1.0, coefficient))
    return FdcResult(points, slope, intercept, coefficient)


@dataclass(frozen=True)
class FitnessBinning:
    """c_const equal-width bins over [0, max_fitness].

    bin_index(f) = min(floor(f / step), c_const - 1); the top bin absorbs
    f = max_fitness exactly.
    """

    max_fitness: float
    c_const: int
    step: float

    def __post_init__(self):
        if self.max_fitness <= 0.0 or not math.isfinite(self.max_fitness):
            raise InputError("max_fitness must be a positive real")
        if self.c_const < 1:
            raise InputError("c_const must be at least 1")
        if self.step != self.max_fitness / self.c_const:
            raise InputError("step must equal max_fitness / c_const")

    def bin_index(self, f: float) -> int:
        if f < 0.0:
            raise InputError(f"negative fitness {f!r} cannot be binned")
        return min(int(math.floor(f / self.step)), self.c_const - 1)

    def bin_indices(self, fitness) -> np.ndarray:
        f = np.asarray(fitness, dtype=np.float64)
        if (f < 0.0).any():
            raise InputError("negative fitness values cannot be binned")
        idx = np.floor(f / self.step).astype(np.int64)
        return np.minimum(idx, self.c_const - 1)

    def edges(self, k: int) -> tuple[float, float]:
        return (k * self.step, (k + 1) * self.step)

    def center(self, k: int) -> float:
        return (k + 0.5) * self.step


def make_binning(fitness, c_const: int) -> FitnessBinning:
    """Binning over the observed fitness values; all must be >= 0, max > 0."""
    f = np.asarray(fitness, dtype=np.float64)
    if f.size == 0:
        raise InputError("cannot bin an empty fitness list")
    if not isinstance(c_const, int) or isinstance(c_const, bool) or c_const < 1:
        raise InputError(f"c_const must be a positive integer, got {c_const!r}")
    if (f < 0.0).any():
        raise InputError("negative fitness present; fitness must be non-negative to bin")
    max_fitness = float(f.max())
    if max_fitness == 0.0:
        raise InputError("maximum fitness is 0, bins are undefined")
    return FitnessBinning(max_fitness=max_fitness, c_const=c_const, step=max_fitness / c_const)


@dataclass(frozen=True)
class BoxStats:
    """Five-number summary of one bin's values."""

    count: int
    lo: float
    q1: float
    median: float
    q3: float
    hi: float


def _box_stats(values: list[float]) -> BoxStats | None:
    if not values:
        return None
    q = np.quantile(np.asarray(values, dtype=np.float64), [0.0, 0.25, 0.5, 0.75, 1.0],
                    method="linear")
    return BoxStats(len(values), float(q[0]), float(q[1]), float(q[2]), float(q[3]), float(q[4]))


@dataclass(frozen=True)
class LocalityProfile:
    """Neighbor-mean fitness, binned by own fitness.

    pairs holds (f(x), neighbor_mean_fitness(x)) in row order for every row
    with at least one neighbor; rows with empty neighborhoods contribute to
    no bin and are only counted. Bin counts plus excluded_empty add up to the
    sample size.
    """

    bins: tuple[BoxStats | None, ...]
    pairs: tuple[tuple[float, float], ...]
    excluded_empty: int


def locality(sample: LandscapeSample, nbhd: NeighborhoodIndex,
             binning: FitnessBinning) -> LocalityProfile:
    """Per-bin distribution of the neighbor-mean fitness."""
    if nbhd.n != sample.n:
        raise ValueError("neighborhood index size does not match sample size")
    f = sample.fitness
    per_bin: list[list[float]] = [[] for _ in range(binning.c_const)]
    pairs: list[tuple[float, float]] = []
    excluded = 0
    for i in range(sample.n):
        nb = nbhd.neighbors[i]
        if len(nb) == 0:
            excluded += 1
            continue
        m = float(np.mean(f[nb]))
        pairs.append((float(f[i]), m))
        per_bin[binning.bin_index(float(f[i]))].append(m)
    return LocalityProfile(
        bins=tuple(_box_stats(v) for v in per_bin),
        pairs=tuple(pairs),
        excluded_empty=excluded,
    )


@dataclass(frozen=True)
class NeutralityProfile:
    """Per-row neutral-neighbor counts and their per-bin distribution.

    nd[i] counts neighbors whose fitness differs from row i's by strictly
    less than epsilon. Rows without neighbors have nd = 0 and stay included,
    so bin counts add up to the sample size.
    """

    epsilon: float
    nd: tuple[int, ...]
    bins: tuple[BoxStats | None, ...]


def neutrality(sample: LandscapeSample, nbhd: NeighborhoodIndex,
               binning: FitnessBinning, params: AnalysisParams) -> NeutralityProfile:
    """Neutrality degree N_d(x) = |{x' in N(x) : |f(x') - f(x)| < epsilon}|.

    epsilon defaults to max_fitness / c_const (the bin width) unless the
    params carry an override.
    """
    if nbhd.n != sample.n:
        raise ValueError("neighborhood index size does not match sample size")
    if params.neutrality_epsilon_override is not None:
        eps = params.neutrality_epsilon_override
    else:
        eps = binning.max_fitness / binning.c_const
    f = sample.fitness
    nd: list[int] = []
    per_bin: list[list[float]] = [[] for _ in range(binning.c_const)]
    for i in range(sample.n):
        nb = nbhd.neighbors[i]
        if len(nb) == 0:
            k = 0
        else:
            k = int(np.count_nonzero(np.abs(f[nb] - f[i]) < eps))
        nd.append(k)
        per_bin[binning.bin_index(float(f[i]))].append(float(k))
    return NeutralityProfile(
        epsilon=float(eps),
        nd=tuple(nd),
        bins=tuple(_box_stats(v) for v in per_bin),
    )
