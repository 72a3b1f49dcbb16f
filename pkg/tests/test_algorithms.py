import math

import numpy as np
import pytest

from fsdiam import algorithms as algos
from fsdiam.baselines import brute_force_diameter

NAMED = {"fs-heap", "fs-wspd", "fs-levels", "fs-directions", "grid", "grid-fs-dir", "chan", "chan-mod",
         "dir-search", "bbox", "pca", "brute"}


def test_registry_covers_required_names():
    assert NAMED <= set(algos.ALGORITHMS)
    with pytest.raises(ValueError, match="unknown algorithm"):
        algos.get("quickhull")


@pytest.mark.parametrize("name", sorted(algos.ALGORITHMS))
def test_every_algorithm_reports_its_name_and_a_realized_pair(name):
    pts = np.random.default_rng(1).standard_normal((120, 3))
    alg = algos.get(name)
    res = alg(pts, 0.1)
    assert res.algorithm == name
    i, j = res.best_pair
    assert res.best_distance == math.dist(pts[i], pts[j])
    assert res.best_distance <= brute_force_diameter(pts).best_distance


def test_eps_modes():
    assert not algos.get("fs-directions").accepts(0.0)
    assert algos.get("fs-heap").accepts(0.0)
    assert algos.get("bbox").accepts(0.0) and algos.get("bbox").accepts(0.5)
    with pytest.raises(ValueError):
        algos.get("chan")([[0, 0], [1, 1]], 0.0)
    assert algos.get("pca")([[0, 0], [1, 1]], 0.3).eps == 0.0
