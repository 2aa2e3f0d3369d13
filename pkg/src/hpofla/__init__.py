"""Fitness landscape analysis for tabular hyperparameter benchmarks.

Gower-distance neighborhoods over mixed numeric/categorical configuration
spaces, fitness-distance correlation, locality and neutrality profiles, and
plateau diagnostics, with a deterministic CLI front end (``hpofla``).
"""

__version__ = "0.1.0"

from .analyses import (
    BoxStats,
    FdcResult,
    FitnessBinning,
    LocalityProfile,
    NeutralityProfile,
    fdc,
    locality,
    make_binning,
    neutrality,
)
from .diagnostics import (
    DiagnosticsParams,
    PlateauFinding,
    detect_plateaus,
    fitness_histogram,
    match_class_priors,
)
from .errors import InputError
from .gower import (
    DistanceMatrix,
    OptimaSet,
    distance_matrix,
    distances_to_optima,
    feature_dissimilarity,
    find_optima,
    gower_distance,
)
from .ingest import (
    AnalysisParams,
    FeatureSpec,
    LandscapeSample,
    Schema,
    TableData,
    build_sample,
    infer_schema,
    load_table,
    parse_schema,
    sample_rows,
    schema_to_json,
    seeded_generator,
)
from .neighborhood import (
    NeighborhoodIndex,
    NeighborhoodSpec,
    build_neighborhoods,
    compute_spec,
)
from .synthetic import PlantedSpec, inject_plateau, planted_landscape

__all__ = [
    "AnalysisParams",
    "BoxStats",
    "DiagnosticsParams",
    "DistanceMatrix",
    "FdcResult",
    "FeatureSpec",
    "FitnessBinning",
    "InputError",
    "LandscapeSample",
    "LocalityProfile",
    "NeighborhoodIndex",
    "NeighborhoodSpec",
    "NeutralityProfile",
    "OptimaSet",
    "PlantedSpec",
    "PlateauFinding",
    "Schema",
    "TableData",
    "build_neighborhoods",
    "build_sample",
    "compute_spec",
    "detect_plateaus",
    "distance_matrix",
    "distances_to_optima",
    "fdc",
    "feature_dissimilarity",
    "find_optima",
    "fitness_histogram",
    "gower_distance",
    "infer_schema",
    "inject_plateau",
    "load_table",
    "locality",
    "make_binning",
    "match_class_priors",
    "neutrality",
    "parse_schema",
    "planted_landscape",
    "sample_rows",
    "schema_to_json",
    "seeded_generator",
    "__version__",
]
