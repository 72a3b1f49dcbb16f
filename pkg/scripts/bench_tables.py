#!/usr/bin/env python3
"""Timing matrix over the synthetic families: rows grouped by eps, one column per input.

    python3 scripts/bench_tables.py --n 2000 --repetitions 3 --out md > bench.md
"""

import argparse
import sys

from fsdiam.bench import BenchConfig, BenchInput, format_csv, format_markdown, run_bench
from fsdiam.generators import GenSpec

ALGOS = ["fs-heap", "fs-wspd", "fs-levels", "fs-directions", "grid", "grid-fs-dir", "chan", "chan-mod",
         "dir-search", "bbox", "pca"]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=2000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--repetitions", type=int, default=3)
    ap.add_argument("--oracle-cutoff", type=int, default=5000)
    ap.add_argument("--out", choices=("md", "csv"), default="md")
    args = ap.parse_args()
    specs = [GenSpec("sphere", args.n, args.seed), GenSpec("cube", args.n, args.seed),
             GenSpec("ellipse", args.n, args.seed), GenSpec("arcs", args.n - args.n % 2, args.seed)]
    inputs = [BenchInput(s.describe(), s.generate(), s.seed) for s in specs]
    cfg = BenchConfig(inputs, ALGOS, [0.0, 0.01, 0.1], args.repetitions, args.oracle_cutoff)
    rows = run_bench(cfg)
    sys.stdout.write(format_markdown(rows) if args.out == "md" else format_csv(rows))
    bad = [r for r in rows if r.violation]
    for r in bad:
        print(f"violation: {r.algorithm} eps={r.eps_label} {r.input}: {r.violation}", file=sys.stderr)
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
