"""Points, axis-aligned boxes and the elementary quantities built on them.

A point set is an ``(n, d)`` float64 array; a point's index is its row.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


def as_points(data, copy: bool = False) -> np.ndarray:
    """Validate ``data`` as a point set and return it as an (n, d) float array."""
    pts = np.array(data, dtype=np.float64) if copy else np.asarray(data, dtype=np.float64)
    if pts.ndim == 1:
        if pts.size == 0:
            raise ValueError("empty point set")
        pts = pts.reshape(1, -1)
    if pts.ndim != 2:
        raise ValueError(f"points must be 2-D (n, d), got shape {pts.shape}")
    if pts.shape[1] < 1:
        raise ValueError("points must have dimension d >= 1")
    if not np.all(np.isfinite(pts)):
        raise ValueError("points contain NaN or infinite coordinates")
    return pts


def distance(p, q) -> float:
    """Euclidean distance. Every distance the library reports goes through here."""
    if len(p) != len(q):
        raise ValueError(f"dimension mismatch: {len(p)} vs {len(q)}")
    return math.dist(p, q)


@dataclass(frozen=True)
class AABB:
    lo: tuple
    hi: tuple

    def __post_init__(self):
        if len(self.lo) != len(self.hi):
            raise ValueError("lo/hi dimension mismatch")
        if any(a > b for a, b in zip(self.lo, self.hi)):
            raise ValueError(f"invalid box: lo={self.lo} hi={self.hi}")

    @property
    def dim(self) -> int:
        return len(self.lo)

    def extents(self) -> tuple:
        return tuple(b - a for a, b in zip(self.lo, self.hi))

    def contains(self, p) -> bool:
        return all(a <= x <= b for a, x, b in zip(self.lo, p, self.hi))

    def contains_box(self, other: "AABB") -> bool:
        return self.contains(other.lo) and self.contains(other.hi)

    def corners(self):
        """Yield all 2**d corners."""
        d = self.dim
        for mask in range(1 << d):
            yield tuple(self.hi[i] if mask >> i & 1 else self.lo[i] for i in range(d))


def bounding_box(points) -> AABB:
    """Tight box of a nonempty point set (any (n, d) array-like)."""
    pts = np.asarray(points, dtype=np.float64)
    if pts.ndim == 1:
        pts = pts.reshape(1, -1)
    if pts.shape[0] == 0:
        raise ValueError("bounding box of an empty point set")
    return AABB(tuple(pts.min(axis=0).tolist()), tuple(pts.max(axis=0).tolist()))


def center_and_radius(box: AABB) -> tuple[tuple, float]:
    """Center of the box and half its diagonal."""
    center = tuple((a + b) / 2.0 for a, b in zip(box.lo, box.hi))
    return center, math.dist(box.lo, box.hi) / 2.0


def longest_edge(box: AABB) -> tuple[int, float]:
    """(axis, extent) of the longest box edge; ties go to the lowest axis."""
    best_axis, best_len = 0, -1.0
    for i, (a, b) in enumerate(zip(box.lo, box.hi)):
        if b - a > best_len:
            best_axis, best_len = i, b - a
    return best_axis, best_len
