"""Command line front end.

    hpofla <fdc|locality|neutrality|diagnose|all> --input table.csv --out DIR [...]
    hpofla generate --rows N [...] --out DIR

Exit codes: 0 on success, 1 on an input problem (bad file, bad flag, bad
cell), 2 on an internal failure. Nothing is written to the output directory
unless the whole pipeline succeeded; each file then lands atomically.
"""

import argparse
import json
import os
import sys

from . import __version__
from .analyses import fdc, locality, make_binning, neutrality
from .canon import write_text_atomic
from .diagnostics import DiagnosticsParams, detect_plateaus, match_class_priors
from .errors import InputError
from .gower import distance_matrix, distances_to_optima, find_optima
from .ingest import (
    AnalysisParams,
    Schema,
    build_sample,
    infer_schema,
    load_table,
    parse_schema,
    schema_to_json,
)
from .neighborhood import build_neighborhoods, compute_spec
from .report import (
    build_report,
    render_distance_dump_csv,
    render_fdc_points_csv,
    render_locality_bins_csv,
    render_neighbor_dump_csv,
    render_neutrality_csv,
    render_report_json,
    render_table_csv,
    validate_report,
)
from .svgplot import render_fdc_svg, render_locality_svg, render_neutrality_svg
from .synthetic import AFFINE, CONSTANT, PlantedSpec, planted_landscape

_ANALYSES = ("fdc", "locality", "neutrality", "diagnose", "all")


class _Parser(argparse.ArgumentParser):
    # flag problems are input errors (exit 1), not argparse's default exit 2
    def error(self, message):
        raise InputError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hpofla",
                     description="Fitness landscape analysis for tabular HPO benchmarks.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="<command>")

    common = _Parser(add_help=False)
    common.add_argument("--input", required=True, help="benchmark table CSV")
    common.add_argument("--schema", default=None,
                        help="schema JSON; inferred from the table when omitted")
    common.add_argument("--fitness-col", dest="fitness_col", default=None,
                        help="fitness column name (default: fitness)")
    common.add_argument("--sample", type=int, default=None,
                        help="analyze a seeded uniform subsample of this many rows")
    common.add_argument("--seed", type=int, default=0, help="sampling seed (default 0)")
    common.add_argument("--c", type=int, default=40, dest="c",
                        help="resolution constant for bins and radius (default 40)")
    common.add_argument("--minimize", action="store_true",
                        help="treat lower fitness as better")
    common.add_argument("--priors", default=None,
                        help="JSON file of majority-class priors, label to probability")
    common.add_argument("--min-count-frac", dest="min_count_frac", type=float, default=0.05,
                        help="plateau population threshold (default 0.05)")
    common.add_argument("--min-diversity", dest="min_diversity", type=float, default=0.8,
                        help="plateau diversity-ratio threshold (default 0.8)")
    common.add_argument("--out", required=True, help="output directory")
    common.add_argument("--plots", action="store_true", help="also write SVG plots")
    common.add_argument("--dump-distances", dest="dump_distances", action="store_true",
                        help="also write the lower-triangle distance dump")
    common.add_argument("--dump-neighbors", dest="dump_neighbors", action="store_true",
                        help="also write the neighborhood adjacency dump")
    common.add_argument("--workers", type=int, default=1,
                        help="worker threads for the distance matrix (default 1); "
                             "the output is bit-identical for any value")

    sub.add_parser("fdc", parents=[common], help="fitness-distance correlation")
    sub.add_parser("locality", parents=[common], help="neighbor-mean fitness per bin")
    sub.add_parser("neutrality", parents=[common], help="neutral-neighbor counts per bin")
    sub.add_parser("diagnose", parents=[common], help="plateau detection")
    sub.add_parser("all", parents=[common], help="run every analysis")

    gen = sub.add_parser("generate", help="write a synthetic benchmark fixture")
    gen.add_argument("--rows", type=int, required=True, help="number of rows")
    gen.add_argument("--numeric", type=int, default=0, help="numeric feature count")
    gen.add_argument("--categorical", type=int, default=0, help="categorical feature count")
    gen.add_argument("--arity", type=int, default=3, help="labels per categorical feature")
    gen.add_argument("--kind", choices=[AFFINE, CONSTANT], default=AFFINE,
                     help="fitness rule")
    gen.add_argument("--value", type=float, default=50.0,
                     help="fitness value for the constant kind")
    gen.add_argument("--inject", action="append", default=None, metavar="FRACTION:FITNESS",
                     help="inject a plateau; repeatable")
    gen.add_argument("--seed", type=int, default=0, help="generator seed (default 0)")
    gen.add_argument("--out", required=True, help="output directory")
    return parser


def _read_text(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def _load_priors(path: str) -> dict:
    try:
        doc = json.loads(_read_text(path))
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed priors document: {exc}") from exc
    if not isinstance(doc, dict) or not doc:
        raise InputError("priors must be a nonempty JSON object of label: probability")
    out = {}
    for label, p in doc.items():
        if isinstance(p, bool) or not isinstance(p, (int, float)):
            raise InputError(f"prior for {label!r} must be a number")
        out[str(label)] = float(p)
    return out


def _run_analysis(args) -> int:
    table_text = _read_text(args.input)
    if args.schema:
        schema = parse_schema(_read_text(args.schema))
        if args.fitness_col:
            schema = Schema(schema.features, args.fitness_col)
    else:
        schema = infer_schema(table_text, fitness_column=args.fitness_col or "fitness")
    data = load_table(table_text, schema)
    params = AnalysisParams(c_const=args.c, maximize=not args.minimize)
    sample = build_sample(data.configs, data.fitness, schema, params,
                          seed=args.seed, sample_size=args.sample)
    matrix = distance_matrix(sample, workers=args.workers)
    optima = find_optima(sample)
    dstar = distances_to_optima(matrix, optima)
    nspec = compute_spec(dstar, params.c_const)
    nbhd = build_neighborhoods(matrix, nspec)

    wanted = set(_ANALYSES[:4]) if args.command == "all" else {args.command}
    binning = None
    if wanted & {"locality", "neutrality", "diagnose"}:
        binning = make_binning(sample.fitness, params.c_const)

    fdc_result = fdc(sample, dstar) if "fdc" in wanted else None
    locality_profile = locality(sample, nbhd, binning) if "locality" in wanted else None
    neutrality_profile = (neutrality(sample, nbhd, binning, params)
                          if "neutrality" in wanted else None)
    plateau_findings = None
    if "diagnose" in wanted:
        priors = _load_priors(args.priors) if args.priors else None
        dparams = DiagnosticsParams(min_count_fraction=args.min_count_frac,
                                    min_diversity_ratio=args.min_diversity,
                                    class_priors=priors)
        plateau_findings = detect_plateaus(sample, matrix, binning, dparams)
        if priors:
            plateau_findings = match_class_priors(plateau_findings, priors, binning)

    # worker count, output paths, and plot/dump switches must not leak into
    # the report or byte-level reproducibility would break
    meta = {
        "tool": "hpofla",
        "version": __version__,
        "command": args.command,
        "input": args.input,
        "schema_file": args.schema,
        "fitness_column": schema.fitness_column,
        "n_features": len(schema.features),
        "rows_usable": len(data.configs),
        "rows_dropped": data.dropped_rows,
        "sample_requested": args.sample,
        "sample_size": sample.n,
        "seed": args.seed,
        "c_const": params.c_const,
        "maximize": params.maximize,
        "optimal_fitness": optima.optimal_fitness,
        "optima_count": len(optima.indices),
        "max_dist": nspec.max_dist,
        "delta": nspec.delta,
        "empty_neighborhood_count": nbhd.empty_count(),
    }
    doc = build_report(meta, fdc_result, locality_profile, neutrality_profile,
                       plateau_findings, binning)
    validate_report(doc, sample.n)

    outputs: dict[str, str] = {"report.json": render_report_json(doc)}
    if fdc_result is not None:
        outputs["fdc_points.csv"] = render_fdc_points_csv(fdc_result)
        if args.plots:
            outputs["fdc.svg"] = render_fdc_svg(fdc_result)
    if locality_profile is not None:
        outputs["locality_bins.csv"] = render_locality_bins_csv(locality_profile, binning)
        if args.plots:
            outputs["locality.svg"] = render_locality_svg(locality_profile, binning)
    if neutrality_profile is not None:
        outputs["neutrality.csv"] = render_neutrality_csv(neutrality_profile, sample,
                                                          binning, nbhd)
        if args.plots:
            outputs["neutrality.svg"] = render_neutrality_svg(neutrality_profile, binning)
    if args.dump_distances:
        outputs["distances.csv"] = render_distance_dump_csv(matrix)
    if args.dump_neighbors:
        outputs["neighbors.csv"] = render_neighbor_dump_csv(nbhd)

    os.makedirs(args.out, exist_ok=True)
    for name, text in outputs.items():
        write_text_atomic(os.path.join(args.out, name), text)
    return 0


def _run_generate(args) -> int:
    injections = []
    for item in args.inject or []:
        head, sep, tail = item.partition(":")
        if not sep:
            raise InputError(f"bad --inject value {item!r}, expected FRACTION:FITNESS")
        try:
            injections.append((float(head), float(tail)))
        except ValueError:
            raise InputError(f"bad --inject value {item!r}, expected two numbers") from None
    spec = PlantedSpec(
        n_rows=args.rows,
        n_numeric=args.numeric,
        n_categorical=args.categorical,
        arities=args.arity,
        kind=args.kind,
        constant_value=args.value,
        injections=tuple(injections),
        seed=args.seed,
    )
    sample = planted_landscape(spec)
    table_text = render_table_csv(sample)
    schema_text = schema_to_json(sample.schema)
    os.makedirs(args.out, exist_ok=True)
    write_text_atomic(os.path.join(args.out, "table.csv"), table_text)
    write_text_atomic(os.path.join(args.out, "schema.json"), schema_text)
    return 0


def run(argv=None) -> int:
    """Parse argv and execute; returns the process exit code."""
    try:
        args = build_parser().parse_args(argv)
        if args.command == "generate":
            return _run_generate(args)
        return _run_analysis(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # internal invariant failures
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
