"""Synthetic landscapes with known ground truth.

planted_landscape draws uniformly random configurations over a simple schema
recipe and assigns fitness by a chosen rule; the planted optimum is the final
row. inject_plateau then overwrites a chosen fraction of rows with fresh
random configurations pinned to one fitness value, which is exactly the
artifact signature the diagnostics are supposed to flag.
"""

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import InputError
from .gower import gower_distance
from .ingest import (
    CATEGORICAL,
    NUMERIC,
    AnalysisParams,
    FeatureSpec,
    LandscapeSample,
    Schema,
    seeded_generator,
)

AFFINE = "affine_distance"
CONSTANT = "constant"
CUSTOM = "custom"
_KINDS = (AFFINE, CONSTANT, CUSTOM)


@dataclass(frozen=True)
class PlantedSpec:
    """Recipe for a synthetic landscape.

    Numeric features are uniform on (0, 1) with that declared range;
    categorical features draw uniformly from arity many labels. With the
    affine_distance kind, fitness is 100 * (1 - delta(y, x0)) for the planted
    row x0, so x0 is the unique optimum at fitness 100 whenever a numeric
    feature is present.
    """

    n_rows: int
    n_numeric: int = 0
    n_categorical: int = 0
    arities: int | tuple[int, ...] = 3
    kind: str = AFFINE
    constant_value: float = 50.0
    custom_fitness: Callable | None = None
    injections: tuple[tuple[float, float], ...] = ()
    seed: int = 0

    def __post_init__(self):
        if self.n_rows < 2:
            raise InputError(f"n_rows must be at least 2, got {self.n_rows!r}")
        if self.n_numeric < 0 or self.n_categorical < 0:
            raise InputError("feature counts must be non-negative")
        if self.n_numeric + self.n_categorical < 1:
            raise InputError("the recipe needs at least one feature")
        if self.kind not in _KINDS:
            raise InputError(f"unknown landscape kind {self.kind!r}")
        if self.kind == CUSTOM and not callable(self.custom_fitness):
            raise InputError("custom kind needs a custom_fitness callable")
        arities = self.arities
        if isinstance(arities, int):
            arities = (arities,) * self.n_categorical
        arities = tuple(int(a) for a in arities)
        if len(arities) != self.n_categorical:
            raise InputError("arities length does not match n_categorical")
        if any(a < 2 for a in arities):
            raise InputError("every categorical arity must be at least 2")
        object.__setattr__(self, "arities", arities)
        injections = tuple((float(f), float(v)) for f, v in self.injections)
        object.__setattr__(self, "injections", injections)
        if any(not (0.0 < f < 1.0) for f, _ in injections):
            raise InputError("every injection fraction must lie in (0, 1)")
        if sum(f for f, _ in injections) > 1.0:
            raise InputError("injection fractions must sum to at most 1")

    def schema(self) -> Schema:
        feats = [
            FeatureSpec(f"x{j:02d}", NUMERIC, (0.0, 1.0)) for j in range(self.n_numeric)
        ] + [
            FeatureSpec(f"c{j:02d}", CATEGORICAL) for j in range(self.n_categorical)
        ]
        return Schema(tuple(feats), "fitness")


def _draw_row(rng: np.random.Generator, schema: Schema, ranges, labels) -> tuple:
    cells = []
    for j, spec in enumerate(schema.features):
        if spec.kind == NUMERIC:
            lo, hi = ranges[j]
            cells.append(float(lo + rng.random() * (hi - lo)))
        else:
            pool = labels[j]
            cells.append(pool[int(rng.integers(0, len(pool)))])
    return tuple(cells)


def planted_landscape(spec: PlantedSpec) -> LandscapeSample:
    """Draw a synthetic sample per the recipe; the planted row is the last."""
    rng = seeded_generator(spec.seed)
    schema = spec.schema()
    ranges = tuple(
        (0.0, 1.0) if f.kind == NUMERIC else None for f in schema.features
    )
    labels: dict[int, list[str]] = {}
    cat_pos = 0
    for j, f in enumerate(schema.features):
        if f.kind == CATEGORICAL:
            labels[j] = [f"v{a}" for a in range(spec.arities[cat_pos])]
            cat_pos += 1
    rows = tuple(_draw_row(rng, schema, ranges, labels) for _ in range(spec.n_rows))
    planted = rows[-1]
    if spec.kind == AFFINE:
        fitness = [100.0 * (1.0 - gower_distance(r, planted, schema, ranges)) for r in rows]
    elif spec.kind == CONSTANT:
        fitness = [float(spec.constant_value)] * spec.n_rows
    else:
        fitness = [float(spec.custom_fitness(r)) for r in rows]
    sample = LandscapeSample(
        schema=schema,
        configs=rows,
        fitness=np.asarray(fitness, dtype=np.float64),
        ranges=ranges,
        params=AnalysisParams(),
        seed=spec.seed,
        source_rows=tuple(range(spec.n_rows)),
    )
    for i, (fraction, value) in enumerate(spec.injections):
        sample = inject_plateau(sample, fraction, value, seed=spec.seed + 1 + i)
    return sample


def inject_plateau(sample: LandscapeSample, fraction: float, fitness_value: float,
                   seed: int) -> LandscapeSample:
    """Replace ceil(fraction * n) uniformly chosen rows with fresh random
    configurations, all pinned to fitness_value.

    Replacement configurations draw numeric cells uniformly over each
    feature's normalization range and categorical cells uniformly over the
    labels observed in the sample, so the injected rows are as diverse as the
    landscape itself.
    """
    if not (isinstance(fraction, (int, float)) and not isinstance(fraction, bool)
            and 0.0 < fraction < 1.0):
        raise InputError(f"injection fraction must lie in (0, 1), got {fraction!r}")
    fitness_value = float(fitness_value)
    if not math.isfinite(fitness_value):
        raise InputError("injected fitness value must be finite")
    n = sample.n
    k = math.ceil(fraction * n)
    rng = seeded_generator(seed)
    # partial Fisher-Yates over the index array, same scheme as row sampling
    idx = list(range(n))
    for i in range(k):
        j = int(rng.integers(i, n))
        idx[i], idx[j] = idx[j], idx[i]
    targets = sorted(idx[:k])

    labels: dict[int, list[str]] = {}
    for j, f in enumerate(sample.schema.features):
        if f.kind == CATEGORICAL:
            observed = sorted({row[j] for row in sample.configs if row[j] is not None})
            if not observed:
                raise InputError(f"categorical column {f.name!r} has no observed labels")
            labels[j] = observed

    configs = list(sample.configs)
    fitness = np.array(sample.fitness)
    for i in targets:
        configs[i] = _draw_row(rng, sample.schema, sample.ranges, labels)
        fitness[i] = fitness_value

    ranges = []
    for j, f in enumerate(sample.schema.features):
        if f.kind != NUMERIC:
            ranges.append(None)
        elif f.declared_range is not None:
            ranges.append(f.declared_range)
        else:
            observed_vals = [row[j] for row in configs if row[j] is not None]
            ranges.append((float(min(observed_vals)), float(max(observed_vals)))
                          if observed_vals else (0.0, 0.0))
    return LandscapeSample(
        schema=sample.schema,
        configs=tuple(configs),
        fitness=fitness,
        ranges=tuple(ranges),
        params=sample.params,
        seed=sample.seed,
        source_rows=sample.source_rows,
    )
