import math
import xml.etree.ElementTree as ET

import pytest

from fsdiam.engine import PairRefinement, Strategy
from fsdiam.generators import gen_ellipse, gen_sphere
from fsdiam.snapshot import plane_axes, replay, write_snapshots

SVG = "{http://www.w3.org/2000/svg}"


@pytest.fixture(scope="module")
def ellipse_run():
    pts = gen_ellipse(1000, d=2)
    run = PairRefinement(pts, 0.01, Strategy.HEAP_4WAY, trace=True)
    return pts, run.run(), run.tree


@pytest.mark.parametrize("every", [1, 7, 50, 200, 10**6])
def test_frame_count(ellipse_run, every):
    _, res, tree = ellipse_run
    frames = list(replay(res.trace, tree, every))
    assert len(frames) == math.ceil(len(res.trace) / every)
    assert frames[-1].event_index == len(res.trace)


def test_run_drains(ellipse_run):
    _, res, tree = ellipse_run
    frames = list(replay(res.trace, tree, 40))
    last = frames[-1]
    assert last.live_pairs == 0 and last.live_nodes == () and last.active_points == 0
    assert tuple(sorted(last.best_pair)) == res.best_pair
    # the region still under consideration only shrinks once refinement starts
    active = [f.active_points for f in frames]
    assert all(a >= b for a, b in zip(active, active[1:]))
    assert active[0] == 1000


def test_svg_files_parse(ellipse_run, tmp_path):
    pts, res, tree = ellipse_run
    written = write_snapshots(pts, res, tree, tmp_path, every=100)
    assert [p for p, _ in written] == [str(tmp_path / f"snap_{k:04d}.svg") for k in range(1, len(written) + 1)]
    for path, frame in written:
        root = ET.parse(path).getroot()
        assert root.tag == SVG + "svg"
        groups = {g.get("id"): g for g in root.iter(SVG + "g")}
        assert len(groups["points"]) == len(pts)
        assert len(groups["live"]) == len(frame.live_nodes)
        assert len(groups["retired"]) == len(frame.retired_nodes)
        assert (root.find(SVG + "line") is not None) == (frame.best_pair is not None)


def test_retired_nodes_not_live(ellipse_run):
    _, res, tree = ellipse_run
    for f in replay(res.trace, tree, 30):
        assert not set(f.retired_nodes) & set(f.live_nodes)


def test_plane_rules():
    assert plane_axes(2, None) == (0, 1) == plane_axes(2, "xy")
    assert plane_axes(3, "yz") == (1, 2)
    for d, plane in ((3, None), (3, "xw"), (2, "xz"), (4, "xy")):
        with pytest.raises(ValueError):
            plane_axes(d, plane)


def test_projected_sphere_and_untraced(tmp_path):
    pts = gen_sphere(300, 1)
    run = PairRefinement(pts, 0.05, Strategy.HEAP_WSPD, trace=True)
    res = run.run()
    assert write_snapshots(pts, res, run.tree, tmp_path, every=10, plane="xz")
    plain = PairRefinement(pts, 0.05).run()
    with pytest.raises(ValueError):
        write_snapshots(pts, plain, run.tree, tmp_path, every=10, plane="xz")
    with pytest.raises(ValueError):
        list(replay(res.trace, run.tree, 0))
