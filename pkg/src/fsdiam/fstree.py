"""Lazily built fair-split tree.

Nodes live in a flat arena (``FSTree.nodes``). A node owns a contiguous
slice ``[start, end)`` of the tree's working copy of the points; splitting a
node partitions that slice in place, so children own adjacent sub-slices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import AABB, as_points


class DegenerateLeafError(ValueError):
    """Raised when splitting a node whose points all coincide."""


@dataclass(slots=True)
class FSNode:
    id: int
    start: int
    end: int
    box: AABB
    center: tuple
    radius: float
    axis: int  # longest axis
    lmax: float
    depth: int
    parent: int
    # representative point: first of the range at creation (original index, coords)
    rep: int
    rep_xy: tuple
    # extremes along the longest axis (original indices, coords)
    ext_lo: int
    ext_lo_xy: tuple
    ext_hi: int
    ext_hi_xy: tuple
    left: int = -1
    right: int = -1

    @property
    def size(self) -> int:
        return self.end - self.start

    @property
    def is_split(self) -> bool:
        return self.left >= 0

    @property
    def splittable(self) -> bool:
        # lmax == 0 <=> all points coincide (singleton or duplicate cluster)
        return self.lmax > 0.0


class FSTree:
    """Fair-split tree over an (n, d) point array; grows only via :meth:`split`."""

    def __init__(self, points):
        pts = as_points(points, copy=True)
        if pts.shape[0] == 0:
            raise ValueError("cannot build a tree over an empty point set")
        self.points = pts  # reordered in place by splits
        self.order = np.arange(pts.shape[0])  # position -> original index
        self.nodes: list[FSNode] = []
        self.root = self._make_node(0, pts.shape[0], depth=0, parent=-1)

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    def _make_node(self, start: int, end: int, depth: int, parent: int) -> int:
        sub = self.points[start:end]
        lo = sub.min(axis=0)
        hi = sub.max(axis=0)
        ext = hi - lo
        axis = int(np.argmax(ext))  # first maximum: lowest axis wins ties
        lo_t, hi_t = tuple(lo.tolist()), tuple(hi.tolist())
        col = sub[:, axis]
        i_lo = start + int(np.argmin(col))
        i_hi = start + int(np.argmax(col))
        order = self.order
        nid = len(self.nodes)
        self.nodes.append(FSNode(
            id=nid, start=start, end=end,
            box=AABB(lo_t, hi_t),
            center=tuple(((lo + hi) / 2.0).tolist()),
            radius=math.dist(lo_t, hi_t) / 2.0,
            axis=axis, lmax=float(ext[axis]),
            depth=depth, parent=parent,
            rep=int(order[start]), rep_xy=tuple(sub[0].tolist()),
            ext_lo=int(order[i_lo]), ext_lo_xy=tuple(self.points[i_lo].tolist()),
            ext_hi=int(order[i_hi]), ext_hi_xy=tuple(self.points[i_hi].tolist()),
        ))
        return nid

    def split(self, nid: int) -> tuple[int, int]:
        """Split node ``nid`` at the midpoint of its longest edge.

        Coordinates below the midpoint go left, the rest go right. Splitting an
        already split node returns its existing children.
        """
        node = self.nodes[nid]
        if node.left >= 0:
            return node.left, node.right
        if node.lmax <= 0.0:
            raise DegenerateLeafError(f"node {nid} holds only coincident points")
        s, e, axis = node.start, node.end, node.axis
        a, b = node.box.lo[axis], node.box.hi[axis]
        mid = (a + b) / 2.0
        if mid <= a:  # adjacent floats: keep both sides nonempty
            mid = b
        sub = self.points[s:e]
        mask = sub[:, axis] < mid
        perm = np.concatenate((np.flatnonzero(mask), np.flatnonzero(~mask)))
        self.points[s:e] = sub[perm]
        self.order[s:e] = self.order[s:e][perm]
        k = s + int(mask.sum())
        node.left = self._make_node(s, k, node.depth + 1, nid)
        node.right = self._make_node(k, e, node.depth + 1, nid)
        return node.left, node.right

    def indices(self, nid: int) -> np.ndarray:
        """Original indices of the points under node ``nid``."""
        node = self.nodes[nid]
        return self.order[node.start:node.end]

    def coords(self, nid: int) -> np.ndarray:
        node = self.nodes[nid]
        return self.points[node.start:node.end]

    def leaves(self) -> list[int]:
        return [v.id for v in self.nodes if v.left < 0]

    def split_all(self) -> "FSTree":
        """Split recursively until every leaf is a singleton or a duplicate cluster."""
        stack = [self.root]
        while stack:
            nid = stack.pop()
            if self.nodes[nid].lmax > 0.0:
                stack.extend(self.split(nid))
        return self


def build_root(points) -> FSTree:
    return FSTree(points)


def split_node(tree: FSTree, nid: int) -> tuple[int, int]:
    return tree.split(nid)
