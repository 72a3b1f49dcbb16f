#!/usr/bin/env python3
"""SVG frames of fs-heap refining a densely sampled ellipse."""

import argparse

from fsdiam.engine import PairRefinement, Strategy
from fsdiam.generators import gen_ellipse
from fsdiam.snapshot import write_snapshots


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=1000)
    ap.add_argument("--eps", type=float, default=0.01)
    ap.add_argument("--every", type=int, default=60)
    ap.add_argument("--out-dir", default="snapshots")
    args = ap.parse_args()
    pts = gen_ellipse(args.n, d=2)
    run = PairRefinement(pts, args.eps, Strategy.HEAP_4WAY, trace=True)
    res = run.run()
    for path, f in write_snapshots(pts, res, run.tree, args.out_dir, args.every):
        print(f"{path}  events={f.event_index}  live pairs={f.live_pairs}  active points={f.active_points}")


if __name__ == "__main__":
    main()
