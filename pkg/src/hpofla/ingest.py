"""Benchmark table ingestion: schemas, CSV parsing, seeded row sampling.

A benchmark table is a UTF-8 CSV with a header row, '.' as the decimal
separator, and the empty string meaning a missing cell. Each hyperparameter
column is declared numeric or categorical by a schema document; when no
schema is supplied one is inferred from the data. Ingestion ends in a
LandscapeSample, the immutable value every downstream analysis consumes.
"""

import csv
import io
import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import InputError

NUMERIC = "numeric"
CATEGORICAL = "categorical"
_KINDS = (NUMERIC, CATEGORICAL)

# One table cell: a finite real, a text label, or missing.
Cell = float | str | None


def seeded_generator(seed: int) -> np.random.Generator:
    """PCG64 generator for a 64-bit seed; the single RNG used package-wide.

    PCG64 is pinned because its stream is documented and stable across
    platforms, which keeps sampling and synthetic fixtures reproducible.
    """
    if not isinstance(seed, int) or isinstance(seed, bool) or seed < 0:
        raise InputError(f"seed must be a non-negative integer, got {seed!r}")
    return np.random.Generator(np.random.PCG64(seed))


@dataclass(frozen=True)
class FeatureSpec:
    """One hyperparameter column: name, kind, optional declared numeric range.

    A declared range overrides the observed one during normalization so that
    analyses of different subsamples of the same benchmark stay comparable.
    """

    name: str
    kind: str
    declared_range: tuple[float, float] | None = None

    def __post_init__(self):
        if not self.name:
            raise InputError("feature name must be nonempty")
        if self.kind not in _KINDS:
            raise InputError(f"unknown feature kind {self.kind!r} for column {self.name!r}")
        if self.declared_range is not None:
            if self.kind != NUMERIC:
                raise InputError(f"range declared for categorical column {self.name!r}")
            lo, hi = self.declared_range
            object.__setattr__(self, "declared_range", (float(lo), float(hi)))
            lo, hi = self.declared_range
            if not (math.isfinite(lo) and math.isfinite(hi)):
                raise InputError(f"non-finite declared range for column {self.name!r}")
            if lo > hi:
                raise InputError(f"declared range min > max for column {self.name!r}")


@dataclass(frozen=True)
class Schema:
    """Ordered feature declarations plus the name of the fitness column."""

    features: tuple[FeatureSpec, ...]
    fitness_column: str

    def __post_init__(self):
        object.__setattr__(self, "features", tuple(self.features))
        if not self.features:
            raise InputError("schema declares no features")
        names = [f.name for f in self.features]
        if len(set(names)) != len(names):
            dup = sorted({n for n in names if names.count(n) > 1})
            raise InputError(f"duplicate feature name(s): {', '.join(dup)}")
        if not self.fitness_column:
            raise InputError("fitness column name must be nonempty")
        if self.fitness_column in names:
            raise InputError(f"fitness column {self.fitness_column!r} is also declared as a feature")

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(f.name for f in self.features)


def parse_schema(text: str) -> Schema:
    """Parse a schema JSON document.

    Expected shape:
        {"fitness_column": "<name>",
         "features": [{"name": ..., "kind": "numeric"|"categorical",
                       "range": [min, max]?}, ...]}
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed schema document: {exc}") from exc
    if not isinstance(doc, dict):
        raise InputError("schema document must be a JSON object")
    raw = doc.get("features")
    if not isinstance(raw, list) or not raw:
        raise InputError("schema document needs a nonempty 'features' list")
    fitness = doc.get("fitness_column", "fitness")
    if not isinstance(fitness, str):
        raise InputError("'fitness_column' must be a string")
    feats = []
    for entry in raw:
        if not isinstance(entry, dict):
            raise InputError("each feature entry must be a JSON object")
        name = entry.get("name")
        kind = entry.get("kind")
        if not isinstance(name, str) or not isinstance(kind, str):
            raise InputError("each feature entry needs string 'name' and 'kind'")
        rng = entry.get("range")
        if rng is not None:
            if (not isinstance(rng, list) or len(rng) != 2
                    or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in rng)):
                raise InputError(f"feature {name!r}: 'range' must be a [min, max] pair of numbers")
            rng = (float(rng[0]), float(rng[1]))
        feats.append(FeatureSpec(name, kind, rng))
    return Schema(tuple(feats), fitness)


def schema_to_json(schema: Schema) -> str:
    """Serialize a schema to canonical JSON; parse_schema inverts this."""
    from .canon import dumps_canonical

    feats = []
    for f in schema.features:
        entry: dict = {"name": f.name, "kind": f.kind}
        if f.declared_range is not None:
            entry["range"] = [f.declared_range[0], f.declared_range[1]]
        feats.append(entry)
    return dumps_canonical({"fitness_column": schema.fitness_column, "features": feats})


def infer_schema(text: str, fitness_column: str = "fitness") -> Schema:
    """Infer a schema from table text.

    A column is numeric iff every non-missing cell parses as a finite real;
    otherwise it is categorical. All header columns except the fitness column
    become features, in header order.
    """
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise InputError("empty table: no header row") from None
    if fitness_column not in header:
        raise InputError(f"fitness column {fitness_column!r} not found in header")
    numeric_ok = {name: True for name in header}
    seen_value = {name: False for name in header}
    for row in reader:
        if not row:
            continue
        for name, cell in zip(header, row):
            if cell == "":
                continue
            seen_value[name] = True
            try:
                v = float(cell)
                if not math.isfinite(v):
                    numeric_ok[name] = False
            except ValueError:
                numeric_ok[name] = False
    feats = tuple(
        FeatureSpec(name, NUMERIC if numeric_ok[name] else CATEGORICAL)
        for name in header
        if name != fitness_column
    )
    return Schema(feats, fitness_column)


@dataclass(frozen=True)
class TableData:
    """Usable rows of a parsed table, in file order, plus the drop count."""

    configs: tuple[tuple[Cell, ...], ...]
    fitness: tuple[float, ...]
    dropped_rows: int


def load_table(text: str, schema: Schema) -> TableData:
    """Parse CSV text against a schema.

    Rows whose fitness cell is missing or non-finite are dropped and counted.
    Unparseable numeric cells and ragged rows are errors; extra columns not
    named by the schema are ignored. Retained rows keep file order.
    """
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise InputError("empty table: no header row") from None
    needed = list(schema.names) + [schema.fitness_column]
    for name in needed:
        hits = header.count(name)
        if hits == 0:
            raise InputError(f"missing header column {name!r}")
        if hits > 1:
            raise InputError(f"header column {name!r} appears {hits} times")
    col = {name: header.index(name) for name in needed}
    fit_idx = col[schema.fitness_column]

    configs: list[tuple[Cell, ...]] = []
    fitness: list[float] = []
    dropped = 0
    for lineno, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != len(header):
            raise InputError(f"record {lineno}: expected {len(header)} cells, got {len(row)}")
        raw_fit = row[fit_idx]
        if raw_fit == "":
            dropped += 1
            continue
        try:
            fit = float(raw_fit)
        except ValueError:
            raise InputError(
                f"record {lineno}: fitness cell {raw_fit!r} is not a real number"
            ) from None
        if not math.isfinite(fit):
            dropped += 1
            continue
        cells: list[Cell] = []
        for spec in schema.features:
            raw = row[col[spec.name]]
            if raw == "":
                cells.append(None)
            elif spec.kind == NUMERIC:
                try:
                    v = float(raw)
                except ValueError:
                    raise InputError(
                        f"record {lineno}, column {spec.name!r}: cell {raw!r} "
                        f"is not a real number"
                    ) from None
                if not math.isfinite(v):
                    raise InputError(
                        f"record {lineno}, column {spec.name!r}: cell {raw!r} is not finite"
                    )
                cells.append(v)
            else:
                cells.append(raw)
        configs.append(tuple(cells))
        fitness.append(fit)
    if not configs:
        raise InputError("no usable rows: every row was empty or dropped")
    return TableData(tuple(configs), tuple(fitness), dropped)


def sample_rows(configs_count: int, sample_size: int, seed: int) -> list[int]:
    """Draw min(sample_size, configs_count) distinct row indices.

    Partial Fisher-Yates shuffle over the index array, driven by the pinned
    PCG64 generator, so the draw is uniform without replacement and identical
    across platforms and thread counts for a fixed seed. Indices come back in
    draw order.
    """
    if not isinstance(configs_count, int) or configs_count < 1:
        raise InputError(f"configs_count must be a positive integer, got {configs_count!r}")
    if not isinstance(sample_size, int) or sample_size < 2:
        raise InputError(f"sample size must be at least 2, got {sample_size!r}")
    rng = seeded_generator(seed)
    k = min(sample_size, configs_count)
    idx = list(range(configs_count))
    for i in range(k):
        j = int(rng.integers(i, configs_count))
        idx[i], idx[j] = idx[j], idx[i]
    return idx[:k]


@dataclass(frozen=True)
class AnalysisParams:
    """Knobs shared by every analysis stage.

    c_const is the resolution constant: it divides the maximum distance to
    the best configurations into the neighborhood radius, and the maximum
    fitness into both the bin width and the default neutrality tolerance.
    """

    c_const: int = 40
    maximize: bool = True
    neutrality_epsilon_override: float | None = None

    def __post_init__(self):
        if not isinstance(self.c_const, int) or isinstance(self.c_const, bool) or self.c_const < 1:
            raise InputError(f"c_const must be a positive integer, got {self.c_const!r}")
        if self.neutrality_epsilon_override is not None:
            eps = float(self.neutrality_epsilon_override)
            if not math.isfinite(eps) or eps <= 0:
                raise InputError("neutrality epsilon override must be a positive real")
            object.__setattr__(self, "neutrality_epsilon_override", eps)


@dataclass(frozen=True)
class LandscapeSample:
    """The analyzed slice of a benchmark: rows, fitness, normalization ranges.

    ranges holds, per feature, the numeric normalization interval actually
    used downstream (declared if present, else observed) or None for a
    categorical feature. Values are immutable after construction and safe to
    share across concurrent readers.
    """

    schema: Schema
    configs: tuple[tuple[Cell, ...], ...]
    fitness: np.ndarray
    ranges: tuple[tuple[float, float] | None, ...]
    params: AnalysisParams
    seed: int
    source_rows: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "configs", tuple(tuple(row) for row in self.configs))
        fit = np.asarray(self.fitness, dtype=np.float64)
        fit.flags.writeable = False
        object.__setattr__(self, "fitness", fit)
        object.__setattr__(self, "ranges", tuple(self.ranges))
        object.__setattr__(self, "source_rows", tuple(int(i) for i in self.source_rows))
        n = len(self.configs)
        k = len(self.schema.features)
        if n < 2:
            raise InputError(f"a landscape sample needs at least 2 rows, got {n}")
        if fit.shape != (n,):
            raise InputError("fitness length does not match row count")
        if not np.isfinite(fit).all():
            raise InputError("fitness values must be finite")
        if len(self.source_rows) != n:
            raise InputError("source_rows length does not match row count")
        if len(self.ranges) != k:
            raise InputError("ranges length does not match feature count")
        for j, spec in enumerate(self.schema.features):
            rng = self.ranges[j]
            if spec.kind == NUMERIC:
                if rng is None:
                    raise InputError(f"numeric column {spec.name!r} has no range")
                lo, hi = rng
                if not (math.isfinite(lo) and math.isfinite(hi)) or lo > hi:
                    raise InputError(f"bad range for column {spec.name!r}: {rng!r}")
            elif rng is not None:
                raise InputError(f"categorical column {spec.name!r} must not carry a range")
        for i, row in enumerate(self.configs):
            if len(row) != k:
                raise InputError(f"row {i} has {len(row)} cells, schema declares {k}")
            for j, spec in enumerate(self.schema.features):
                v = row[j]
                if v is None:
                    continue
                if spec.kind == NUMERIC:
                    if isinstance(v, bool) or not isinstance(v, (int, float)):
                        raise InputError(f"row {i}, column {spec.name!r}: numeric cell {v!r}")
                    if not math.isfinite(v):
                        raise InputError(f"row {i}, column {spec.name!r}: non-finite cell")
                    lo, hi = self.ranges[j]
                    if not (lo <= v <= hi):
                        raise InputError(
                            f"row {i}, column {spec.name!r}: value {v!r} falls outside "
                            f"the normalization range [{lo}, {hi}]"
                        )
                elif not isinstance(v, str):
                    raise InputError(f"row {i}, column {spec.name!r}: categorical cell {v!r}")

    @property
    def n(self) -> int:
        return len(self.configs)


def build_sample(
    configs,
    fitness,
    schema: Schema,
    params: AnalysisParams,
    seed: int,
    sample_size: int | None = None,
) -> LandscapeSample:
    """Assemble the analyzed sample, optionally subsampling rows first.

    Sampled indices are sorted ascending so retained rows keep their source
    order. Numeric normalization ranges are observed per feature over the
    retained rows; a declared range takes precedence. A numeric feature with
    no observed values and no declared range gets the degenerate range
    (0, 0), which is harmless because every cell of such a feature is
    missing and therefore carries weight 0.
    """
    configs = list(configs)
    fitness = list(fitness)
    if len(configs) != len(fitness):
        raise InputError("configs and fitness lengths differ")
    if sample_size is not None:
        picked = sorted(sample_rows(len(configs), sample_size, seed))
    else:
        picked = list(range(len(configs)))
    if len(picked) < 2:
        raise InputError(f"fewer than 2 retained rows ({len(picked)})")
    rows = tuple(tuple(configs[i]) for i in picked)
    fit = [float(fitness[i]) for i in picked]

    ranges: list[tuple[float, float] | None] = []
    for j, spec in enumerate(schema.features):
        if spec.kind != NUMERIC:
            ranges.append(None)
            continue
        if spec.declared_range is not None:
            ranges.append(spec.declared_range)
            continue
        observed = []
        for row in rows:
            cell = row[j]
            if cell is None:
                continue
            if isinstance(cell, bool) or not isinstance(cell, (int, float)):
                raise InputError(
                    f"feature {spec.name!r}: numeric cell has non-numeric value {cell!r}"
                )
            observed.append(float(cell))
        if observed:
            ranges.append((min(observed), max(observed)))
        else:
            ranges.append((0.0, 0.0))
    return LandscapeSample(
        schema=schema,
        configs=rows,
        fitness=np.asarray(fit),
        ranges=tuple(ranges),
        params=params,
        seed=seed,
        source_rows=tuple(picked),
    )
