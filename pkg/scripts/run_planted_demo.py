#!/usr/bin/env python3
"""Round-trip demo: generate a planted benchmark, analyze it, print the story.

Generates an affine landscape with one injected plateau, runs every analysis
through the command line entry points, and prints the headline numbers. The
output directory keeps the full report.json, CSVs, and SVG plots.
"""

import argparse
import json
import os
import sys

from hpofla import cli


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--rows", type=int, default=1000)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--inject", default="0.10:50.0",
                        help="FRACTION:FITNESS plateau to plant (default 0.10:50.0)")
    parser.add_argument("--out", default="demo_out", help="output directory")
    args = parser.parse_args()

    fixture = os.path.join(args.out, "fixture")
    code = cli.run([
        "generate", "--rows", str(args.rows), "--numeric", "1", "--categorical", "1",
        "--arity", "2", "--seed", str(args.seed), "--inject", args.inject,
        "--out", fixture,
    ])
    if code != 0:
        return code

    analysis = os.path.join(args.out, "analysis")
    code = cli.run([
        "all", "--input", os.path.join(fixture, "table.csv"),
        "--schema", os.path.join(fixture, "schema.json"),
        "--plots", "--out", analysis,
    ])
    if code != 0:
        return code

    with open(os.path.join(analysis, "report.json"), encoding="utf-8") as fh:
        doc = json.load(fh)
    meta = doc["metadata"]
    print(f"rows analyzed      {meta['sample_size']}")
    print(f"optimum fitness    {meta['optimal_fitness']:.4f} "
          f"({meta['optima_count']} optimum row(s))")
    print(f"radius delta       {meta['delta']:.6f} "
          f"(max distance to optimum {meta['max_dist']:.4f})")
    print(f"empty neighborhoods {meta['empty_neighborhood_count']}")
    fdc = doc["fdc"]
    coeff = "undefined" if fdc["coefficient"] is None else f"{fdc['coefficient']:.6f}"
    print(f"fdc coefficient    {coeff}  (slope {fdc['slope']:.3f}, "
          f"intercept {fdc['intercept']:.3f})")
    print(f"mean neutrality    {doc['neutrality']['mean_nd']:.3f} "
          f"(epsilon {doc['neutrality']['epsilon']:.3f})")
    if doc["plateaus"]:
        for p in doc["plateaus"]:
            print(f"plateau            bin {p['bin_index']} around fitness "
                  f"{p['bin_center']:.2f}: {p['count']} rows "
                  f"({100 * p['count_fraction']:.1f}%), "
                  f"diversity ratio {p['diversity_ratio']:.3f}")
    else:
        print("plateau            none flagged")
    print(f"files under       {analysis}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
