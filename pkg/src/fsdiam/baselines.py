"""Comparison algorithms: brute force, bounding box, PCA, grid snapping,
direction search and hyperplane projection recursion.

Every function returns a :class:`DiameterResult` whose pair indexes the
original input, and whose distance is measured between those original points.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .engine import DiameterResult, RunStats, Strategy, approx_diameter, fs_directions_diameter
from .geometry import as_points


def _result(pts, i, j, name, eps=0.0, evals=0, t0=None, **extra) -> DiameterResult:
    i, j = (int(i), int(j)) if i <= j else (int(j), int(i))
    wall = time.perf_counter() - t0 if t0 is not None else 0.0
    stats = RunStats(distance_evaluations=evals, wall_time=wall, **extra)
    return DiameterResult((i, j), math.dist(pts[i].tolist(), pts[j].tolist()), stats, name, eps)


def _need_two(pts):
    if pts.shape[0] < 2:
        raise ValueError("need at least two points")


def _check_positive(eps):
    eps = float(eps)
    if not eps > 0 or math.isinf(eps):
        raise ValueError(f"eps must be a finite positive number, got {eps}")
    return eps


# -- exact ----------------------------------------------------------------

def _farthest_pair(pts: np.ndarray, block: int = 256) -> tuple[int, int]:
    """Exact farthest pair; ties resolved to the lexicographically smallest (i, j)."""
    n = pts.shape[0]
    best_sq = -1.0
    for s in range(0, n - 1, block):
        chunk = pts[s:s + block]
        sq = ((chunk[:, None, :] - pts[None, s:, :]) ** 2).sum(axis=2)
        best_sq = max(best_sq, float(np.triu(sq, 1).max()) if sq.size else -1.0)
    # squared distances agree with math.dist to ~1e-15 relative; re-rank the
    # near-maximal candidates with the exact distance function
    cut = best_sq * (1 - 1e-9)
    cand = []
    for s in range(0, n - 1, block):
        chunk = pts[s:s + block]
        sq = np.triu(((chunk[:, None, :] - pts[None, s:, :]) ** 2).sum(axis=2), 1)
        for a, b in zip(*np.nonzero(sq >= cut)):
            cand.append((s + int(a), s + int(b)))
    rows = pts.tolist()
    best, best_d = (0, 0), -1.0
    for i, j in sorted(cand):
        dist = math.dist(rows[i], rows[j])
        if dist > best_d:
            best, best_d = (i, j), dist
    return best


def brute_force_diameter(points) -> DiameterResult:
    """O(n^2) scan over all pairs. The oracle for every other method."""
    t0 = time.perf_counter()
    pts = as_points(points)
    _need_two(pts)
    i, j = _farthest_pair(pts)
    n = pts.shape[0]
    return _result(pts, i, j, "brute", evals=n * (n - 1) // 2, t0=t0)


# -- constant factor ------------------------------------------------------

def _face_extremes(pts: np.ndarray) -> list[int]:
    """Per axis, the lexicographically smallest point on the min face and the
    largest on the max face (other axes in order break ties)."""
    out = []
    for a in range(pts.shape[1]):
        for face, pick in ((pts[:, a].min(), np.argmin), (pts[:, a].max(), np.argmax)):
            cand = np.flatnonzero(pts[:, a] == face)
            for b in range(pts.shape[1]):
                if len(cand) == 1:
                    break
                col = pts[cand, b]
                cand = cand[col == col[pick(col)]]
            out.append(int(cand[0]))
    return out


def bbox_diameter(points) -> DiameterResult:
    """Longest pair among points touching the faces of the bounding box."""
    t0 = time.perf_counter()
    pts = as_points(points)
    _need_two(pts)
    cand = sorted(set(_face_extremes(pts)))
    rows = pts.tolist()
    best, best_d, evals = (0, 0), -1.0, 0
    for x, i in enumerate(cand):
        for j in cand[x + 1:]:
            evals += 1
            dist = math.dist(rows[i], rows[j])
            if dist > best_d:
                best, best_d = (i, j), dist
    if best_d < 0:  # every point coincides
        best, best_d = (0, 1), 0.0
    return _result(pts, *best, "bbox", evals=evals, t0=t0)


def _extreme_pairs(pts: np.ndarray, dirs: np.ndarray, chunk: int = 4096) -> tuple[int, int, int]:
    """Longest extreme pair over projections on ``dirs`` (rows); lowest row wins ties."""
    lo, hi = [], []
    for s in range(0, dirs.shape[0], chunk):
        proj = pts @ dirs[s:s + chunk].T
        lo.extend(proj.argmin(axis=0).tolist())
        hi.extend(proj.argmax(axis=0).tolist())
    rows = pts.tolist()
    best, best_d = (0, 0), -1.0
    for i, j in zip(lo, hi):
        dist = math.dist(rows[i], rows[j])
        if dist > best_d:
            best, best_d = (i, j), dist
    return best[0], best[1], len(lo)


def pca_diameter(points) -> DiameterResult:
    """Extreme pairs along the principal axes of the covariance matrix."""
    t0 = time.perf_counter()
    pts = as_points(points)
    _need_two(pts)
    centered = pts - pts.mean(axis=0)
    cov = centered.T @ centered / pts.shape[0]
    try:
        _, vecs = np.linalg.eigh(cov)
    except np.linalg.LinAlgError as exc:
        raise RuntimeError(f"covariance eigen-decomposition failed: {exc}") from exc
    i, j, evals = _extreme_pairs(pts, vecs.T)
    return _result(pts, i, j, "pca", evals=evals, t0=t0)


# -- grid snapping --------------------------------------------------------

@dataclass(frozen=True)
class GridSnapConfig:
    """Grid resolution for snapping in dimension ``d``.

    ``k = ceil(sqrt(d) / eps)`` cells per axis. A cell diagonal is then at
    most ``eps * diam`` and each point sits within half a diagonal of its
    center, so snapping moves the diameter by at most ``eps * diam``. With ``ceil(1 / eps)`` cells the shift can reach
    ``sqrt(d) * eps * diam``.
    """

    eps: float
    d: int = 1

    def __post_init__(self):
        _check_positive(self.eps)
        if int(self.d) != self.d or self.d < 1:
            raise ValueError(f"d must be a positive integer, got {self.d}")

    @property
    def k(self) -> int:
        return max(1, math.ceil(math.sqrt(self.d) / self.eps))


@dataclass(frozen=True)
class SnapResult:
    """Output of :func:`grid_snap`.

    ``points`` are cell centers after cleaning; ``rep[i]`` is the original
    index in the cell of ``points[i]`` farthest from the bounding-box center;
    ``cells`` are integer cell coordinates.
    """

    points: np.ndarray
    rep: np.ndarray
    cells: np.ndarray
    k: int
    occupied: int  # distinct cells before cleaning

    def __len__(self) -> int:
        return self.points.shape[0]


def _clean(cells: np.ndarray) -> np.ndarray:
    """Indices of cells kept by grid cleaning (two extremes per axis line, every axis)."""
    keep = np.arange(cells.shape[0])
    d = cells.shape[1]
    for axis in range(d):
        sub = cells[keep]
        others = [sub[:, a] for a in range(d) if a != axis]
        # lexsort: last key is primary
        order = np.lexsort([sub[:, axis]] + others[::-1])
        s = sub[order]
        if d > 1:
            rest = np.delete(s, axis, axis=1)
            new_line = np.ones(len(s), dtype=bool)
            new_line[1:] = np.any(rest[1:] != rest[:-1], axis=1)
        else:
            new_line = np.zeros(len(s), dtype=bool)
            new_line[0] = True
        end_line = np.roll(new_line, -1)
        end_line[-1] = True
        keep = keep[order[new_line | end_line]]
    return np.sort(keep)


def grid_snap(points, eps: float) -> SnapResult:
    """Snap to the centers of a k^d grid over the bounding box (k from
    :class:`GridSnapConfig`), then grid-clean: on every axis-parallel line of
    occupied cells keep only the two extreme cells.

    The cleaned centers have diameter within ``(1 +- eps) * diam(points)``.
    """
    pts = as_points(points)
    cfg = GridSnapConfig(eps, pts.shape[1])
    k = cfg.k
    lo = pts.min(axis=0)
    ext = pts.max(axis=0) - lo
    safe = np.where(ext > 0, ext, 1.0)
    cells = np.floor((pts - lo) / safe * k).astype(np.int64)
    np.clip(cells, 0, k - 1, out=cells)
    cells[:, ext == 0] = 0
    uniq, inverse = np.unique(cells, axis=0, return_inverse=True)
    inverse = inverse.reshape(-1)
    # representative: the point farthest from the box center within its cell
    far = ((pts - (lo + ext / 2)) ** 2).sum(axis=1)
    order = np.lexsort((-far, inverse))
    starts = np.ones(len(order), dtype=bool)
    starts[1:] = inverse[order][1:] != inverse[order][:-1]
    first = order[starts]
    occupied = len(uniq)
    kept = _clean(uniq)
    uniq, first = uniq[kept], first[kept]
    centers = lo + (uniq + 0.5) * ext / k
    return SnapResult(centers, first, uniq, k, occupied)


def snap_resolution(budget: float, d: int) -> float:
    """Snap parameter whose representatives lose at most ``budget * diam``.

    A representative and any point it stands for share a cell, so they are at
    most one cell diagonal (``eps * diam``) apart. Both ends of a pair move.
    """
    return budget / 2.0


def _snapped_reps(pts: np.ndarray, budget: float) -> np.ndarray:
    """Original indices surviving a snap whose diameter loss is <= budget."""
    return grid_snap(pts, snap_resolution(budget, pts.shape[1])).rep


def grid_diameter(points, eps: float) -> DiameterResult:
    """Grid cleaning, then FIFO-levels refinement on the survivors."""
    t0 = time.perf_counter()
    eps = _check_positive(eps)
    pts = as_points(points)
    _need_two(pts)
    reps = _snapped_reps(pts, eps / 2)
    sub = approx_diameter(pts[reps], eps / 2, Strategy.FIFO_LEVELS)
    i, j = reps[sub.best_pair[0]], reps[sub.best_pair[1]]
    s = sub.stats
    return _result(pts, i, j, "grid", eps, evals=s.distance_evaluations, t0=t0,
                   pairs_created=s.pairs_created, nodes_built=s.nodes_built,
                   heap_ops=s.heap_ops)


def grid_fs_directions_diameter(points, eps: float) -> DiameterResult:
    t0 = time.perf_counter()
    eps = _check_positive(eps)
    pts = as_points(points)
    _need_two(pts)
    reps = _snapped_reps(pts, eps / 2)
    if len(reps) < 2:
        return _result(pts, reps[0], reps[0], "grid-fs-dir", eps, t0=t0)
    sub = fs_directions_diameter(pts[reps], eps / 2)
    i, j = reps[sub.best_pair[0]], reps[sub.best_pair[1]]
    s = sub.stats
    return _result(pts, i, j, "grid-fs-dir", eps, evals=s.distance_evaluations, t0=t0,
                   pairs_created=s.pairs_created, nodes_built=s.nodes_built,
                   heap_ops=s.heap_ops, projections=s.projections,
                   projected_points=s.projected_points)


# -- direction search -----------------------------------------------------

@dataclass(frozen=True)
class DirectionCover:
    """Unit vectors such that every line through the origin is within
    ``angular_radius`` of one of them."""

    directions: np.ndarray
    angular_radius: float

    def __len__(self) -> int:
        return self.directions.shape[0]

    def max_angle(self, samples: np.ndarray) -> float:
        """Largest line angle from any sample to its nearest cover direction."""
        u = samples / np.linalg.norm(samples, axis=1, keepdims=True)
        cos = np.zeros(len(u))
        for s in range(0, len(self.directions), 2048):
            np.maximum(cos, np.abs(u @ self.directions[s:s + 2048].T).max(axis=1), out=cos)
        return float(np.arccos(np.clip(cos, -1.0, 1.0)).max())


def _circle(beta: float, half: bool) -> np.ndarray:
    if half:
        m = max(1, math.ceil(math.pi / (2 * beta)))
        ang = (np.arange(m) + 0.5) * math.pi / m
    else:
        m = max(1, math.ceil(math.pi / beta))
        ang = np.arange(m) * 2 * math.pi / m
    return np.column_stack((np.cos(ang), np.sin(ang)))


def _sphere(k: int, beta: float, half: bool) -> np.ndarray:
    """Points on S^k (in R^{k+1}) with every point (every line, if ``half``)
    within angle ``beta`` of one of them.

    Polar bands around the last axis, each band covered by a smaller sphere.
    With polar offset t and in-band angle psi, 1 - cos(angle) equals
    (1 - cos t) + sin(theta) sin(theta_j) (1 - cos psi); half the versine
    budget goes to each term.
    """
    if beta >= math.pi:
        e = np.zeros((1, k + 1))
        e[0, 0] = 1.0
        return e
    if k == 1:
        return _circle(beta, half)
    budget = 1.0 - math.cos(beta)
    h = math.acos(1.0 - budget / 2)  # max polar offset inside a band
    span = math.pi / 2 if half else math.pi
    m = max(1, math.ceil(span / (2 * h)))
    out = []
    for j in range(m):
        theta = (j + 0.5) * span / m
        lo_t, hi_t = theta - span / (2 * m), theta + span / (2 * m)
        s_max = 1.0 if lo_t <= math.pi / 2 <= hi_t else max(math.sin(lo_t), math.sin(hi_t))
        s = math.sin(theta)
        cap = budget / 2 / (s * s_max) if s > 0 else math.inf
        psi = math.acos(1.0 - cap) if cap < 2.0 else math.pi
        sub = _sphere(k - 1, psi, False)
        out.append(np.column_stack((s * sub, np.full(len(sub), math.cos(theta)))))
    return np.vstack(out)


def direction_cover(eps: float, d: int) -> DirectionCover:
    """Directions whose caps of angular radius sqrt(2 eps) cover all lines in R^d.

    Bands of polar angle, each covered recursively by a lower dimensional
    sphere; count is O(1/eps^((d-1)/2)).
    """
    eps = _check_positive(eps)
    if int(d) != d or d < 2:
        raise ValueError(f"direction cover needs d >= 2, got {d}")
    return DirectionCover(_cached_cover(eps, int(d)), math.sqrt(2 * eps))


@lru_cache(maxsize=32)
def _cached_cover(eps: float, d: int) -> np.ndarray:
    dirs = _sphere(d - 1, math.sqrt(2 * eps), half=True)
    dirs.flags.writeable = False  # shared between calls
    return dirs


def direction_search_diameter(points, eps: float, pre_snap: bool = False) -> DiameterResult:
    """Extreme pairs along every direction of a cover; longest one wins."""
    t0 = time.perf_counter()
    eps = _check_positive(eps)
    pts = as_points(points)
    _need_two(pts)
    d = pts.shape[1]
    if d == 1:
        return _result(pts, int(pts.argmin()), int(pts.argmax()), "dir-search", eps, evals=1, t0=t0)
    reps = np.arange(pts.shape[0])
    cover_eps = eps
    if pre_snap:
        reps = _snapped_reps(pts, eps / 2)
        cover_eps = eps / 2
    cover = direction_cover(cover_eps, d)
    i, j, evals = _extreme_pairs(pts[reps], cover.directions)
    name = "dir-search-snap" if pre_snap else "dir-search"
    return _result(pts, reps[i], reps[j], name, eps, evals=evals, t0=t0,
                   projected_points=len(reps) * len(cover))


# -- hyperplane projection recursion ---------------------------------------

def _cross(o, a, b) -> float:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull_2d(points) -> list[int]:
    """Indices of the hull vertices in counter-clockwise order (monotone chain).

    Collinear points are dropped; an all-collinear input yields its two ends.
    """
    pts = np.asarray(points, dtype=np.float64)
    order = np.lexsort((pts[:, 1], pts[:, 0])).tolist()
    rows = pts.tolist()
    # drop exact duplicates so the chain never stalls
    uniq = [order[0]]
    for i in order[1:]:
        if rows[i] != rows[uniq[-1]]:
            uniq.append(i)
    if len(uniq) <= 2:
        return uniq

    def chain(seq):
        out = []
        for i in seq:
            while len(out) >= 2 and _cross(rows[out[-2]], rows[out[-1]], rows[i]) <= 0:
                out.pop()
            out.append(i)
        return out

    lower = chain(uniq)
    upper = chain(reversed(uniq))
    return lower[:-1] + upper[:-1]


def diameter_2d_exact(points) -> tuple[int, int, int]:
    """Exact farthest pair in the plane: hull, then antipodal-pair scan.

    Returns (i, j, evaluated pairs).
    """
    pts = np.asarray(points, dtype=np.float64)
    hull = convex_hull_2d(pts)
    rows = pts.tolist()
    h = len(hull)
    if h == 1:
        return hull[0], hull[0], 0
    if h == 2:
        return hull[0], hull[1], 1
    P = [rows[i] for i in hull]
    best, best_d, evals = (0, 1), -1.0, 0
    j = 1
    for i in range(h):
        a, b = P[i], P[(i + 1) % h]
        # advance j while the triangle area against edge (a, b) grows
        while abs(_cross(a, b, P[(j + 1) % h])) > abs(_cross(a, b, P[j])):
            j = (j + 1) % h
        for cand in (j, (j + 1) % h):
            for end in (i, (i + 1) % h):
                evals += 1
                dist = math.dist(P[end], P[cand])
                if dist > best_d:
                    best, best_d = (end, cand), dist
    return hull[best[0]], hull[best[1]], evals


_HULL, _FS = "hull", "fs"


def _hyperplane_count(eps: float) -> int:
    # normals spaced pi/m on a half circle keep some hyperplane within
    # pi/(2m) <= sqrt(eps/2) of any direction
    return max(1, math.ceil(math.pi / (2 * math.sqrt(eps / 2))))


def _leaf_count(d: int, eps: float) -> int:
    total = 1
    while d > 2:
        total *= _hyperplane_count(eps)
        d, eps = d - 1, eps / 2
    return total


class _HyperplaneRecursion:
    def __init__(self, base2d: str, exact_cutoff):
        self.base2d = base2d
        self.exact_cutoff = exact_cutoff
        self.evals = 0
        self.leaves = 0

    def solve(self, pts: np.ndarray, eps: float) -> tuple[int, int]:
        """Indices into ``pts`` of a pair at least (1 - eps) * diam(pts) apart."""
        n, d = pts.shape
        if n == 1:
            return 0, 0
        if d == 1:
            return int(pts[:, 0].argmin()), int(pts[:, 0].argmax())
        if d == 2:
            self.leaves += 1
            if self.base2d == _HULL:
                i, j, ev = diameter_2d_exact(pts)
                self.evals += ev
                return i, j
            res = approx_diameter(pts, eps, Strategy.HEAP_4WAY)
            self.evals += res.stats.distance_evaluations
            return res.best_pair
        cutoff = self.exact_cutoff
        if cutoff is None:
            cutoff = 2 * _leaf_count(d, eps)
        if n <= cutoff:
            self.evals += n * (n - 1) // 2
            return _farthest_pair(pts)

        # budget: eps/4 cleaning, eps/4 hyperplane tilt, eps/2 recursion
        reps = _snapped_reps(pts, eps / 4)
        work = pts[reps]
        ext = work.max(axis=0) - work.min(axis=0)
        a, b = (int(x) for x in np.argsort(-ext, kind="stable")[:2])
        rest = [c for c in range(d) if c not in (a, b)]
        m = _hyperplane_count(eps)
        rows = work.tolist()
        best, best_d = (0, 0), -1.0
        for j in range(m):
            phi = (j + 0.5) * math.pi / m
            # in-plane direction orthogonal to the normal cos(phi) e_a + sin(phi) e_b
            t = -math.sin(phi) * work[:, a] + math.cos(phi) * work[:, b]
            proj = np.column_stack([t] + [work[:, c] for c in rest])
            i, k = self.solve(proj, eps / 2)
            self.evals += 1
            dist = math.dist(rows[i], rows[k])
            if dist > best_d:
                best, best_d = (i, k), dist
        return int(reps[best[0]]), int(reps[best[1]])


def chan_diameter(points, eps: float, base2d: str = _HULL, exact_cutoff: int | None = None) -> DiameterResult:
    """Project onto a family of hyperplanes and recurse with eps/2 down to the plane.

    ``base2d`` is ``"hull"`` (exact planar diameter) or ``"fs"`` (planar
    pair refinement). Subproblems no larger than ``exact_cutoff`` points are
    solved by brute force; by default the cutoff is where brute force is
    cheaper than recursing (``0`` disables it).
    """
    t0 = time.perf_counter()
    eps = _check_positive(eps)
    if base2d not in (_HULL, _FS):
        raise ValueError(f"base2d must be 'hull' or 'fs', got {base2d!r}")
    pts = as_points(points)
    _need_two(pts)
    if pts.shape[1] < 2:
        raise ValueError("chan_diameter needs d >= 2")
    solver = _HyperplaneRecursion(base2d, exact_cutoff)
    i, j = solver.solve(pts, eps)
    name = "chan" if base2d == _HULL else "chan-mod"
    return _result(pts, i, j, name, eps, evals=solver.evals, t0=t0, projections=solver.leaves)
