import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from fsdiam.fstree import DegenerateLeafError, FSTree, build_root, split_node
from fsdiam.geometry import bounding_box


def small_sets():
    return st.integers(1, 4).flatmap(lambda d: arrays(
        np.float64, st.tuples(st.integers(1, 40), st.just(d)),
        elements=st.sampled_from([0.0, 0.25, 1.0, 1.5, 3.0, -2.0, 7.75])
        | st.floats(-100, 100, allow_nan=False)))


def check_node(tree, nid):
    node = tree.nodes[nid]
    coords = tree.coords(nid)
    assert node.size == len(coords) > 0
    box = bounding_box(coords)
    assert node.box == box
    assert node.lmax == max(box.extents())
    idx = tree.indices(nid)
    assert np.array_equal(tree.points[node.start:node.end], coords)
    assert node.rep in idx and node.ext_lo in idx and node.ext_hi in idx


@settings(max_examples=60, deadline=None)
@given(small_sets())
def test_full_split_invariants(pts):
    tree = FSTree(pts).split_all()
    n = len(pts)
    assert len(tree.nodes) <= 2 * n - 1
    # order is a permutation and points follow it
    assert sorted(tree.order.tolist()) == list(range(n))
    assert np.array_equal(tree.points, pts[tree.order])
    for node in tree.nodes:
        check_node(tree, node.id)
        if node.is_split:
            l, r = tree.nodes[node.left], tree.nodes[node.right]
            assert l.start == node.start and l.end == r.start and r.end == node.end
            assert node.box.contains_box(l.box) and node.box.contains_box(r.box)
            assert l.parent == r.parent == node.id
            mid = (node.box.lo[node.axis] + node.box.hi[node.axis]) / 2
            assert l.box.hi[node.axis] < r.box.lo[node.axis] or mid <= node.box.lo[node.axis]
        else:
            assert node.lmax == 0.0
    for leaf in tree.leaves():
        assert len(np.unique(tree.coords(leaf), axis=0)) == 1


def test_midpoint_goes_right():
    tree = FSTree([[0.0], [1.0], [2.0]])
    l, r = tree.split(tree.root)
    assert sorted(tree.coords(l)[:, 0]) == [0.0]
    assert sorted(tree.coords(r)[:, 0]) == [1.0, 2.0]


def test_split_is_idempotent_and_lazy():
    tree = build_root(np.random.default_rng(0).random((20, 2)))
    assert len(tree.nodes) == 1
    first = split_node(tree, tree.root)
    assert tree.split(tree.root) == first
    assert len(tree.nodes) == 3


def test_duplicate_cluster_cannot_split():
    tree = FSTree([[1.0, 2.0]] * 5)
    assert not tree.nodes[tree.root].splittable
    with pytest.raises(DegenerateLeafError):
        tree.split(tree.root)
    assert tree.split_all().leaves() == [tree.root]


def test_adjacent_floats_still_split():
    a = 1.0
    b = np.nextafter(a, 2.0)
    tree = FSTree([[a], [b], [b]])
    l, r = tree.split(tree.root)
    assert tree.nodes[l].size == 1 and tree.nodes[r].size == 2


def test_longest_axis_extremes_recorded():
    pts = np.array([[0.0, 5.0], [3.0, 4.0], [-1.0, 4.5]])
    tree = FSTree(pts)
    root = tree.nodes[tree.root]
    assert root.axis == 0 and root.lmax == 4.0
    assert (root.ext_lo, root.ext_hi) == (2, 1)


def test_rejects_empty():
    with pytest.raises(ValueError):
        FSTree(np.zeros((0, 2)))


def test_input_not_mutated():
    pts = np.random.default_rng(1).random((50, 3))
    keep = pts.copy()
    FSTree(pts).split_all()
    assert np.array_equal(pts, keep)
