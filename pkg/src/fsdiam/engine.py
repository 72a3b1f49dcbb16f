"""Diameter by refinement of fair-split-tree node pairs.

A run keeps the best realized distance found so far (``delta``) and a pool of
node pairs that may still hold a longer point pair. A pair is discarded once
its upper bound M(u, v) = |c(u) c(v)| + r(u) + r(v) drops to
``(1 + eps) * delta``; otherwise it is refined into child pairs.

Three pool disciplines are offered:

* ``HEAP_4WAY``   max-heap on M, both sides split (up to four children).
* ``HEAP_WSPD``   max-heap on M, only the side with the longer box edge split.
* ``FIFO_LEVELS`` the WSPD split rule, processed first-in first-out.

``fs_directions_diameter`` adds an early exit to ``HEAP_4WAY``: a pair whose
point segments all lie within a small angle of its center axis is settled by
projecting its points onto that axis.
"""

from __future__ import annotations

import heapq
import math
import time
from collections import deque
from dataclasses import asdict, dataclass, field
from enum import Enum
from typing import NamedTuple

import numpy as np

from .fstree import FSTree

# Relative/absolute slack added to M before the prune test so that rounding
# in centers and radii can never discard a pair holding a longer distance.
_REL_GUARD = 1e-12
_ABS_GUARD_ULPS = 64 * 2.0**-52


class Strategy(str, Enum):
    HEAP_4WAY = "heap-4way"
    HEAP_WSPD = "heap-wspd"
    FIFO_LEVELS = "fifo-levels"


class NodePair(NamedTuple):
    u: int
    v: int
    m_value: float


class Event(NamedTuple):
    """One trace record.

    kinds: ``create`` (value=M), ``discard`` (rejected or settled at creation),
    ``project`` (settled by axis projection), ``handle`` (popped, value=M),
    ``prune``, ``expand``, ``split`` (u=node), ``update`` (u, v = point
    indices, value = new estimate).
    """

    kind: str
    u: int
    v: int
    value: float


@dataclass
class RunTrace:
    events: list = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.events)

    def of_kind(self, kind: str) -> list:
        return [e for e in self.events if e.kind == kind]

    def handled_values(self) -> list[float]:
        return [e.value for e in self.events if e.kind == "handle"]

    def estimates(self) -> list[float]:
        return [e.value for e in self.events if e.kind == "update"]

    def created_pairs(self) -> list[tuple[int, int]]:
        return [(e.u, e.v) for e in self.events if e.kind == "create"]

    def pruned_pairs(self) -> list[tuple[int, int]]:
        """Pairs thrown away by the prune test, at creation or when popped."""
        return [(e.u, e.v) for e in self.events if e.kind in ("discard", "prune")]


@dataclass(frozen=True)
class RunStats:
    pairs_created: int = 0
    distance_evaluations: int = 0
    nodes_built: int = 0
    heap_ops: int = 0
    wall_time: float = 0.0
    projections: int = 0
    projected_points: int = 0

    def as_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class DiameterResult:
    best_pair: tuple[int, int]
    best_distance: float
    stats: RunStats = RunStats()
    algorithm: str = ""
    eps: float = 0.0
    trace: RunTrace | None = field(default=None, compare=False, repr=False)

    @property
    def distance(self) -> float:
        return self.best_distance


def pair_upper_bound(tree: FSTree, u: int, v: int) -> float:
    """M(u, v): no point pair of P(u) x P(v) is longer than this."""
    a, b = tree.nodes[u], tree.nodes[v]
    return math.dist(a.center, b.center) + a.radius + b.radius


def should_prune(m_value: float, delta_curr: float, eps: float) -> bool:
    if eps < 0:
        raise ValueError(f"eps must be non-negative, got {eps}")
    return m_value <= (1.0 + eps) * delta_curr


def _check_eps(eps: float) -> float:
    eps = float(eps)
    if not eps >= 0 or math.isinf(eps):
        raise ValueError(f"eps must be a finite non-negative number, got {eps}")
    return eps


class PairRefinement:
    """One diameter run. Build it, call :meth:`run`, read the result.

    ``inherit_bound`` caps each child pair's key at its parent's key. Both are
    valid upper bounds for the child, and the cap keeps handled keys
    non-increasing even where a child's enclosing ball pokes outside its
    parent's.
    """

    def __init__(self, points, eps: float = 0.0, strategy: Strategy = Strategy.HEAP_WSPD,
                 trace: bool = False, directions: bool = False, inherit_bound: bool = True):
        self.eps = _check_eps(eps)
        self.strategy = Strategy(strategy)
        if directions:
            if self.eps <= 0:
                raise ValueError("the directions variant needs eps > 0")
            if self.strategy is not Strategy.HEAP_4WAY:
                raise ValueError("the directions variant runs on HEAP_4WAY")
        self.directions = directions
        self.inherit_bound = inherit_bound
        self.tree = FSTree(points)
        self.trace = RunTrace() if trace else None

        self.delta = 0.0
        self.best = (0, 0)
        self.pairs_created = 0
        self.distance_evaluations = 0
        self.heap_ops = 0
        self.projections = 0
        self.projected_points = 0

        root = self.tree.nodes[self.tree.root]
        scale = max(max(abs(x) for x in root.box.lo), max(abs(x) for x in root.box.hi))
        self._abs_guard = _ABS_GUARD_ULPS * scale
        self._limit = 1.0 + self.eps
        self._sqrt_eps = math.sqrt(self.eps)
        self._pool = []
        self._seq = 0

    # -- estimate -------------------------------------------------------
    def update_estimate(self, u: int, v: int) -> float:
        """Measure one representative point pair of (u, v); raise delta if longer.

        Self pairs use the two extremes along the node's longest axis; other
        pairs use the first point of each node.
        """
        a = self.tree.nodes[u]
        if u == v:
            i, j, p, q = a.ext_lo, a.ext_hi, a.ext_lo_xy, a.ext_hi_xy
        else:
            b = self.tree.nodes[v]
            i, j, p, q = a.rep, b.rep, a.rep_xy, b.rep_xy
        self.distance_evaluations += 1
        dist = math.dist(p, q)
        if dist > self.delta:
            self._raise(dist, i, j)
        return self.delta

    def _raise(self, dist: float, i: int, j: int) -> None:
        self.delta = dist
        self.best = (i, j) if i <= j else (j, i)
        if self.trace is not None:
            self.trace.events.append(Event("update", self.best[0], self.best[1], dist))

    def _prunable(self, m: float) -> bool:
        return m + m * _REL_GUARD + self._abs_guard <= self._limit * self.delta

    # -- pair life cycle --------------------------------------------------
    def _create(self, u: int, v: int, cap: float) -> None:
        nodes = self.tree.nodes
        a, b = nodes[u], nodes[v]
        m = math.dist(a.center, b.center) + a.radius + b.radius
        if self.inherit_bound and m > cap:
            m = cap
        self.pairs_created += 1
        self.update_estimate(u, v)
        trace = self.trace
        if trace is not None:
            trace.events.append(Event("create", u, v, m))
        if u == v:
            # two points or coincident points: the extreme pair was the only pair
            settled = a.lmax == 0.0 or a.end - a.start == 2
        else:
            settled = a.lmax == 0.0 and b.lmax == 0.0
        if settled or self._prunable(m):
            if trace is not None:
                trace.events.append(Event("discard", u, v, m))
            return
        if self.directions and u != v and self._project(u, v):
            if trace is not None:
                trace.events.append(Event("project", u, v, m))
            return
        if self.strategy is Strategy.FIFO_LEVELS:
            self._pool.append((m, u, v))
        else:
            heapq.heappush(self._pool, (-m, self._seq, u, v))
            self._seq += 1
        self.heap_ops += 1

    def _project(self, u: int, v: int) -> bool:
        a, b = self.tree.nodes[u], self.tree.nodes[v]
        length = math.dist(a.center, b.center)
        spread = a.radius + b.radius
        if spread >= length:
            return False  # angle unbounded below pi
        if math.asin(spread / length) > self._sqrt_eps:
            return False
        tree = self.tree
        pts = np.concatenate((tree.coords(u), tree.coords(v)))
        idx = np.concatenate((tree.indices(u), tree.indices(v)))
        axis = (np.asarray(b.center) - np.asarray(a.center)) / length
        proj = pts @ axis
        k0, k1 = int(np.argmin(proj)), int(np.argmax(proj))
        self.projections += 1
        self.projected_points += len(idx)
        self.distance_evaluations += 1
        dist = math.dist(pts[k0].tolist(), pts[k1].tolist())
        if dist > self.delta:
            self._raise(dist, int(idx[k0]), int(idx[k1]))
        return True

    def _split(self, nid: int) -> tuple[int, int]:
        node = self.tree.nodes[nid]
        if node.left < 0 and self.trace is not None:
            self.trace.events.append(Event("split", nid, -1, 0.0))
        return self.tree.split(nid)

    def _expand(self, u: int, v: int, m: float) -> None:
        nodes = self.tree.nodes
        if u == v:
            left, right = self._split(u)
            self._create(left, left, m)
            self._create(left, right, m)
            self._create(right, right, m)
            return
        a, b = nodes[u], nodes[v]
        if self.strategy is Strategy.HEAP_4WAY:
            side_u = self._split(u) if a.lmax > 0.0 else (u,)
            side_v = self._split(v) if b.lmax > 0.0 else (v,)
            for x in side_u:
                for y in side_v:
                    self._create(x, y, m)
        elif a.lmax > b.lmax:
            left, right = self._split(u)
            self._create(left, v, m)
            self._create(right, v, m)
        else:
            left, right = self._split(v)
            self._create(u, left, m)
            self._create(u, right, m)

    def run(self) -> DiameterResult:
        t0 = time.perf_counter()
        tree = self.tree
        if tree.n > 1:
            self._create(tree.root, tree.root, math.inf)
            trace = self.trace
            pool = self._pool
            if self.strategy is Strategy.FIFO_LEVELS:
                queue = deque(pool)
                self._pool = pool = queue
                while queue:
                    m, u, v = queue.popleft()
                    self._step(u, v, m, trace)
            else:
                pop = heapq.heappop
                while pool:
                    negm, _, u, v = pop(pool)
                    self._step(u, v, -negm, trace)
        else:
            self.best = (0, 0)
        wall = time.perf_counter() - t0
        stats = RunStats(
            pairs_created=self.pairs_created,
            distance_evaluations=self.distance_evaluations,
            nodes_built=len(tree.nodes),
            heap_ops=self.heap_ops,
            wall_time=wall,
            projections=self.projections,
            projected_points=self.projected_points,
        )
        name = "fs-directions" if self.directions else _STRATEGY_NAMES[self.strategy]
        return DiameterResult(self.best, self.delta, stats, name, self.eps, self.trace)

    def _step(self, u: int, v: int, m: float, trace) -> None:
        self.heap_ops += 1
        if trace is not None:
            trace.events.append(Event("handle", u, v, m))
        if self._prunable(m):
            if trace is not None:
                trace.events.append(Event("prune", u, v, m))
            return
        if trace is not None:
            trace.events.append(Event("expand", u, v, m))
        self._expand(u, v, m)


_STRATEGY_NAMES = {
    Strategy.HEAP_4WAY: "fs-heap",
    Strategy.HEAP_WSPD: "fs-wspd",
    Strategy.FIFO_LEVELS: "fs-levels",
}


def approx_diameter(points, eps: float = 0.0, strategy: Strategy = Strategy.HEAP_WSPD,
                    trace: bool = False) -> DiameterResult:
    """(1 - eps)-approximate diameter; exact when ``eps == 0``.

    The returned pair is always a pair of input points, so the distance never
    exceeds the true diameter.
    """
    return PairRefinement(points, eps, strategy, trace=trace).run()


def fs_directions_diameter(points, eps: float, trace: bool = False) -> DiameterResult:
    """``HEAP_4WAY`` with pairs of small angular spread settled by projection."""
    eps = _check_eps(eps)
    if eps <= 0:
        raise ValueError("fs_directions_diameter requires eps > 0")
    return PairRefinement(points, eps, Strategy.HEAP_4WAY, trace=trace, directions=True).run()
