"""Report assembly and file emission.

The report document has a fixed key order (metadata, fdc, locality,
neutrality, plateaus); sections that were not requested are null. Before
anything is written the numbers are reconciled against the sample size, so a
bookkeeping bug aborts the run instead of shipping an inconsistent document.
"""

from .analyses import (
    BoxStats,
    FdcResult,
    FitnessBinning,
    LocalityProfile,
    NeutralityProfile,
)
from .canon import dumps_canonical, fmt_float


def _box_row(k: int, binning: FitnessBinning, box: BoxStats | None) -> dict:
    lo, hi = binning.edges(k)
    row: dict = {"bin_index": k, "bin_lo": lo, "bin_hi": hi}
    if box is None:
        row.update({"count": 0, "min": None, "q1": None,
                    "median": None, "q3": None, "max": None})
    else:
        row.update({"count": box.count, "min": box.lo, "q1": box.q1,
                    "median": box.median, "q3": box.q3, "max": box.hi})
    return row


def build_report(metadata: dict,
                 fdc_result: FdcResult | None,
                 locality_profile: LocalityProfile | None,
                 neutrality_profile: NeutralityProfile | None,
                 plateau_findings: list | None,
                 binning: FitnessBinning | None) -> dict:
    doc: dict = {"metadata": dict(metadata)}

    if fdc_result is None:
        doc["fdc"] = None
    else:
        doc["fdc"] = {
            "n_points": len(fdc_result.points),
            "slope": fdc_result.slope,
            "intercept": fdc_result.intercept,
            "coefficient": fdc_result.coefficient,
            "coefficient_defined": fdc_result.coefficient is not None,
        }

    if locality_profile is None:
        doc["locality"] = None
    else:
        doc["locality"] = {
            "excluded_empty": locality_profile.excluded_empty,
            "bins": [_box_row(k, binning, b) for k, b in enumerate(locality_profile.bins)],
        }

    if neutrality_profile is None:
        doc["neutrality"] = None
    else:
        nd = neutrality_profile.nd
        doc["neutrality"] = {
            "epsilon": neutrality_profile.epsilon,
            "mean_nd": sum(nd) / len(nd),
            "bins": [_box_row(k, binning, b) for k, b in enumerate(neutrality_profile.bins)],
        }

    if plateau_findings is None:
        doc["plateaus"] = None
    else:
        doc["plateaus"] = [
            {
                "bin_index": p.bin_index,
                "bin_center": p.bin_center,
                "count": p.count,
                "count_fraction": p.count_fraction,
                "diversity_ratio": p.diversity_ratio,
                "majority_class_label": p.majority_class_label,
            }
            for p in plateau_findings
        ]
    return doc


def validate_report(doc: dict, sample_size: int) -> None:
    """Reconcile the document against the sample size; raise on mismatch.

    These are internal invariants, not input validation: a failure here is a
    bug in the pipeline and surfaces as exit code 2.
    """
    meta = doc["metadata"]
    if meta["sample_size"] != sample_size:
        raise RuntimeError("report metadata sample_size mismatch")
    fdc_doc = doc.get("fdc")
    if fdc_doc is not None and fdc_doc["n_points"] != sample_size:
        raise RuntimeError("fdc point count does not equal sample size")
    loc = doc.get("locality")
    if loc is not None:
        total = sum(b["count"] for b in loc["bins"]) + loc["excluded_empty"]
        if total != sample_size:
            raise RuntimeError("locality bin counts plus excluded rows do not add up")
    neu = doc.get("neutrality")
    if neu is not None:
        if sum(b["count"] for b in neu["bins"]) != sample_size:
            raise RuntimeError("neutrality bin counts do not add up")
    plats = doc.get("plateaus")
    if plats is not None:
        for p in plats:
            if p["count_fraction"] != p["count"] / sample_size:
                raise RuntimeError("plateau count_fraction does not equal count / sample size")


def render_report_json(doc: dict) -> str:
    return dumps_canonical(doc)


def _csv_cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        return fmt_float(v)
    return str(v)


def _csv_lines(header: list[str], rows) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_csv_cell(v) for v in row))
    return "\n".join(lines) + "\n"


def render_fdc_points_csv(fdc_result: FdcResult) -> str:
    return _csv_lines(["distance", "fitness"], fdc_result.points)


def render_locality_bins_csv(profile: LocalityProfile, binning: FitnessBinning) -> str:
    rows = []
    for k, box in enumerate(profile.bins):
        lo, hi = binning.edges(k)
        if box is None:
            rows.append((k, lo, hi, 0, None, None, None, None, None))
        else:
            rows.append((k, lo, hi, box.count, box.lo, box.q1, box.median, box.q3, box.hi))
    return _csv_lines(
        ["bin_index", "bin_lo", "bin_hi", "count", "min", "q1", "median", "q3", "max"], rows)


def render_neutrality_csv(profile: NeutralityProfile, sample, binning: FitnessBinning,
                          nbhd) -> str:
    rows = []
    for i in range(sample.n):
        f = float(sample.fitness[i])
        rows.append((i, f, binning.bin_index(f), profile.nd[i], len(nbhd.neighbors[i])))
    return _csv_lines(["row", "fitness", "bin_index", "nd", "neighbor_count"], rows)


def render_table_csv(sample) -> str:
    """Benchmark-table CSV for a sample (used by the generate command).

    Cells are not quote-escaped; synthetic labels contain no separators.
    """
    header = list(sample.schema.names) + [sample.schema.fitness_column]

    def rows():
        for i, row in enumerate(sample.configs):
            yield list(row) + [float(sample.fitness[i])]

    return _csv_lines(header, rows())


def render_distance_dump_csv(matrix) -> str:
    def rows():
        for i in range(1, matrix.n):
            base = i * (i - 1) // 2
            cond = matrix.condensed()
            for j in range(i):
                yield (i, j, float(cond[base + j]))
    return _csv_lines(["i", "j", "distance"], rows())


def render_neighbor_dump_csv(nbhd) -> str:
    def rows():
        for i, nb in enumerate(nbhd.neighbors):
            for j in nb:
                yield (i, int(j))
    return _csv_lines(["row", "neighbor"], rows())
