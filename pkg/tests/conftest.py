"""Shared builders for the test suite."""

import numpy as np

from hpofla.ingest import (
    CATEGORICAL,
    NUMERIC,
    AnalysisParams,
    FeatureSpec,
    Schema,
    build_sample,
)


def make_schema(kinds, declared=None, fitness_column="fitness"):
    """Schema with features f0, f1, ... of the given kinds.

    declared maps feature position to a (lo, hi) declared range.
    """
    declared = declared or {}
    feats = tuple(
        FeatureSpec(f"f{j}", kind, declared.get(j)) for j, kind in enumerate(kinds)
    )
    return Schema(feats, fitness_column)


def make_sample(configs, fitness, kinds, declared=None, params=None, seed=0):
    schema = make_schema(kinds, declared)
    return build_sample(list(configs), list(fitness), schema,
                        params or AnalysisParams(), seed)


def random_mixed_rows(rng, n_rows, kinds, missing_rate=0.0, labels=("a", "b", "c", "d"),
                      keep_first_column_complete=True):
    """Random rows over the given feature kinds; feature 0 can be kept
    complete so no pair of rows ever loses every feature at once."""
    rows = []
    for _ in range(n_rows):
        cells = []
        for j, kind in enumerate(kinds):
            protected = keep_first_column_complete and j == 0
            if not protected and float(rng.random()) < missing_rate:
                cells.append(None)
            elif kind == NUMERIC:
                cells.append(float(rng.random() * 10.0))
            else:
                cells.append(labels[int(rng.integers(0, len(labels)))])
        rows.append(tuple(cells))
    return rows


def random_kinds(rng, n_features):
    return [NUMERIC if rng.random() < 0.5 else CATEGORICAL for _ in range(n_features)]


def random_fitness(rng, n_rows, top=100.0):
    return [float(rng.random() * top) for _ in range(n_rows)]


def pearson(x, y):
    """Plain textbook correlation, independent of the package internals."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    xc = x - x.mean()
    yc = y - y.mean()
    return float((xc @ yc) / np.sqrt((xc @ xc) * (yc @ yc)))
