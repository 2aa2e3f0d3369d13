"""Plateau diagnostics over fitness bins.

A plateau candidate is a fitness bin that is both heavily populated and
configuration-diverse: many distinct configurations piling up at one fitness
level is the signature of a benchmark artifact (a failure mode score, a
capped metric) rather than a genuine basin, whose members would cluster in
configuration space. Optionally, a flagged bin is matched against known
majority-class priors to suggest an explanation for accuracy-like fitness.
"""

import math
from dataclasses import dataclass, replace

import numpy as np

from .analyses import FitnessBinning
from .errors import InputError
from .gower import DistanceMatrix
from .ingest import LandscapeSample


@dataclass(frozen=True)
class DiagnosticsParams:
    """Thresholds for flagging a bin, plus optional class priors."""

    min_count_fraction: float = 0.05
    min_diversity_ratio: float = 0.8
    class_priors: dict | None = None

    def __post_init__(self):
        for name in ("min_count_fraction", "min_diversity_ratio"):
            v = getattr(self, name)
            if not (isinstance(v, (int, float)) and not isinstance(v, bool)
                    and math.isfinite(v) and 0.0 < v <= 1.0):
                raise InputError(f"{name} must lie in (0, 1], got {v!r}")
        if self.class_priors is not None:
            for label, p in self.class_priors.items():
                if not isinstance(label, str) or not label:
                    raise InputError(f"class prior label {label!r} must be a nonempty string")
                if not (isinstance(p, (int, float)) and not isinstance(p, bool)
                        and math.isfinite(p) and 0.0 <= p <= 1.0):
                    raise InputError(f"class prior for {label!r} must lie in [0, 1], got {p!r}")


@dataclass(frozen=True)
class PlateauFinding:
    """One flagged fitness bin."""

    bin_index: int
    bin_center: float
    count: int
    count_fraction: float
    diversity_ratio: float
    majority_class_label: str | None = None


def fitness_histogram(fitness, binning: FitnessBinning) -> np.ndarray:
    """Row counts per fitness bin; sums to the number of rows."""
    idx = binning.bin_indices(fitness)
    return np.bincount(idx, minlength=binning.c_const)


def detect_plateaus(sample: LandscapeSample, matrix: DistanceMatrix,
                    binning: FitnessBinning,
                    params: DiagnosticsParams | None = None) -> list[PlateauFinding]:
    """Flag bins by population and configuration diversity.

    A bin is flagged iff count/n >= min_count_fraction and its mean pairwise
    distance divided by the whole-sample mean pairwise distance is
    >= min_diversity_ratio. Bins with fewer than 2 rows are never flagged
    (their diversity is undefined). Findings come back sorted by count
    descending, then bin index ascending.
    """
    if params is None:
        params = DiagnosticsParams()
    if matrix.n != sample.n:
        raise ValueError("distance matrix size does not match sample size")
    n = sample.n
    counts = fitness_histogram(sample.fitness, binning)
    whole_mean = matrix.mean_pairwise()
    full = matrix.full()
    bin_of = binning.bin_indices(sample.fitness)
    findings: list[PlateauFinding] = []
    for k in range(binning.c_const):
        count = int(counts[k])
        if count < 2:
            continue
        fraction = count / n
        if fraction < params.min_count_fraction:
            continue
        rows = np.nonzero(bin_of == k)[0]
        sub = full[np.ix_(rows, rows)]
        within_mean = float(sub[np.triu_indices(count, k=1)].mean())
        ratio = within_mean / whole_mean if whole_mean > 0.0 else 0.0
        if ratio < params.min_diversity_ratio:
            continue
        findings.append(PlateauFinding(
            bin_index=k,
            bin_center=binning.center(k),
            count=count,
            count_fraction=fraction,
            diversity_ratio=ratio,
        ))
    findings.sort(key=lambda p: (-p.count, p.bin_index))
    return findings


def match_class_priors(findings, priors, binning: FitnessBinning) -> list[PlateauFinding]:
    """Attach a majority-class label to findings near 100 * prior.

    A finding gets label L iff |bin_center - 100 * prior(L)| <= step, taking
    the nearest prior when several qualify; exact distance ties resolve to
    the lexicographically smallest label so the outcome is deterministic.
    Fitness is assumed to be a percentage-scaled score for this matching.
    """
    if not priors:
        return list(findings)
    DiagnosticsParams(class_priors=dict(priors))  # reuse the validation
    out = []
    for finding in findings:
        best_label = None
        best_dist = math.inf
        for label in sorted(priors):
            dist = abs(finding.bin_center - 100.0 * float(priors[label]))
            if dist < best_dist:
                best_dist = dist
                best_label = label
        if best_label is not None and best_dist <= binning.step:
            finding = replace(finding, majority_class_label=best_label)
        out.append(finding)
    return out
