"""Name -> algorithm table shared by the CLI, the benchmark runner and tests."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from . import baselines as bl
from .engine import DiameterResult, Strategy, approx_diameter, fs_directions_diameter

# eps handling: "any" accepts eps >= 0, "positive" needs eps > 0, "none" ignores eps
EPS_ANY, EPS_POSITIVE, EPS_NONE = "any", "positive", "none"


@dataclass(frozen=True)
class Algorithm:
    name: str
    run: Callable[..., DiameterResult]
    eps_mode: str
    description: str

    def accepts(self, eps: float) -> bool:
        if self.eps_mode == EPS_POSITIVE:
            return eps > 0
        return eps >= 0

    def __call__(self, points, eps: float = 0.0) -> DiameterResult:
        if not self.accepts(eps):
            raise ValueError(f"{self.name} requires eps > 0")
        res = self.run(points, eps)
        if res.algorithm != self.name:
            res = DiameterResult(res.best_pair, res.best_distance, res.stats, self.name,
                                 eps if self.eps_mode != EPS_NONE else 0.0, res.trace)
        return res


def _fs(strategy):
    return lambda pts, eps: approx_diameter(pts, eps, strategy)


ALGORITHMS: dict[str, Algorithm] = {a.name: a for a in [
    Algorithm("fs-heap", _fs(Strategy.HEAP_4WAY), EPS_ANY, "pair refinement, max-heap, 4-way split"),
    Algorithm("fs-wspd", _fs(Strategy.HEAP_WSPD), EPS_ANY, "pair refinement, max-heap, split larger side"),
    Algorithm("fs-levels", _fs(Strategy.FIFO_LEVELS), EPS_ANY, "pair refinement, FIFO, split larger side"),
    Algorithm("fs-directions", lambda p, e: fs_directions_diameter(p, e), EPS_POSITIVE,
              "fs-heap with narrow pairs settled by projection"),
    Algorithm("grid", bl.grid_diameter, EPS_POSITIVE, "grid cleaning then fs-levels"),
    Algorithm("grid-fs-dir", bl.grid_fs_directions_diameter, EPS_POSITIVE,
              "grid cleaning then fs-directions"),
    Algorithm("chan", lambda p, e: bl.chan_diameter(p, e, "hull"), EPS_POSITIVE,
              "hyperplane recursion, exact planar base case"),
    Algorithm("chan-mod", lambda p, e: bl.chan_diameter(p, e, "fs"), EPS_POSITIVE,
              "hyperplane recursion, planar pair refinement base case"),
    Algorithm("dir-search", lambda p, e: bl.direction_search_diameter(p, e), EPS_POSITIVE,
              "extreme pairs over a direction cover"),
    Algorithm("dir-search-snap", lambda p, e: bl.direction_search_diameter(p, e, True), EPS_POSITIVE,
              "grid cleaning then direction search"),
    Algorithm("bbox", lambda p, e: bl.bbox_diameter(p), EPS_NONE, "bounding box extremes"),
    Algorithm("pca", lambda p, e: bl.pca_diameter(p), EPS_NONE, "principal axis extremes"),
    Algorithm("brute", lambda p, e: bl.brute_force_diameter(p), EPS_NONE, "all pairs"),
]}

FS_TRACEABLE = ("fs-heap", "fs-wspd", "fs-levels", "fs-directions")


def get(name: str) -> Algorithm:
    try:
        return ALGORITHMS[name]
    except KeyError:
        raise ValueError(f"unknown algorithm {name!r}; choose from {', '.join(ALGORITHMS)}") from None
