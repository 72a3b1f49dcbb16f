#!/usr/bin/env python3
"""Two far arcs: distance evaluations at eps=0 versus eps=0.1, across n and arc radius.

The arc radius controls how close every cross pair is to the diameter. At
radius separation/2 both arcs lie on one sphere and exact search touches a
constant fraction of all n^2/4 cross pairs.
"""

import argparse

from fsdiam.engine import Strategy, approx_diameter
from fsdiam.generators import gen_arcs


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[250, 500, 1000, 2000])
    ap.add_argument("--radii", type=float, nargs="+", default=[0.5, 0.2, 0.05])
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    print("| radius | n | evals eps=0 | / (n^2/8) | evals eps=0.1 |\n|---|---|---|---|---|")
    for rho in args.radii:
        for n in args.sizes:
            pts = gen_arcs(n, args.seed, arc_radius=rho)
            e0 = approx_diameter(pts, 0.0, Strategy.HEAP_WSPD).stats.distance_evaluations
            e1 = approx_diameter(pts, 0.1, Strategy.HEAP_WSPD).stats.distance_evaluations
            print(f"| {rho:g} | {n} | {e0} | {e0 / (n * n / 8):.3f} | {e1} |")


if __name__ == "__main__":
    main()
