#!/usr/bin/env python3
"""Distance evaluations of fs-wspd at eps=0 on the unit sphere, and the fitted exponent."""

import argparse
import math

import numpy as np

from fsdiam.engine import Strategy, approx_diameter
from fsdiam.generators import gen_sphere


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sizes", type=int, nargs="+", default=[500, 1000, 2000, 4000, 8000])
    ap.add_argument("--seeds", type=int, default=5)
    ap.add_argument("--eps", type=float, default=0.0)
    args = ap.parse_args()
    xs, ys = [], []
    print("| n | mean evals | evals / n^1.5 | mean ms |\n|---|---|---|---|")
    for n in args.sizes:
        ev, ms = [], []
        for seed in range(args.seeds):
            res = approx_diameter(gen_sphere(n, seed), args.eps, Strategy.HEAP_WSPD)
            ev.append(res.stats.distance_evaluations)
            ms.append(res.stats.wall_time * 1e3)
            xs.append(math.log(n))
            ys.append(math.log(ev[-1]))
        print(f"| {n} | {np.mean(ev):.0f} | {np.mean(ev) / n ** 1.5:.2f} | {np.mean(ms):.1f} |")
    print(f"\nfitted exponent: {np.polyfit(xs, ys, 1)[0]:.3f}")


if __name__ == "__main__":
    main()
