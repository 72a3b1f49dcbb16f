"""Replay a traced run and draw the live pair decomposition as SVG frames.

Each frame shows the input points, outlines of nodes in live pairs, dark
fills for regions whose pairs were all thrown away, and the best pair so far.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from xml.sax.saxutils import escape

import numpy as np

PLANES = {"xy": (0, 1), "xz": (0, 2), "yz": (1, 2)}


@dataclass(frozen=True)
class Frame:
    event_index: int  # number of trace events applied
    live_pairs: int
    live_nodes: tuple
    retired_nodes: tuple
    active_points: int  # points covered by live nodes
    best_pair: tuple | None


def plane_axes(d: int, plane: str | None) -> tuple[int, int]:
    if d == 2:
        if plane not in (None, "xy"):
            raise ValueError(f"2-D input only supports plane 'xy', got {plane!r}")
        return 0, 1
    if d == 3:
        if plane is None:
            raise ValueError("3-D input needs a projection plane (xy, xz or yz)")
        if plane not in PLANES:
            raise ValueError(f"bad projection plane {plane!r}; use xy, xz or yz")
        return PLANES[plane]
    raise ValueError(f"snapshots need 2-D or 3-D input, got d={d}")


def replay(trace, tree, every: int):
    """Yield a :class:`Frame` after every ``every`` events and after the last one."""
    if every < 1:
        raise ValueError("every must be >= 1")
    nodes = tree.nodes
    events = trace.events
    live: dict = {}
    refs: dict = {}
    seen: set = set()
    best = None

    def touch(u, v, delta):
        for x in {u, v}:
            refs[x] = refs.get(x, 0) + delta

    total = len(events)
    for k, e in enumerate(events, 1):
        if e.kind == "create":
            live[(e.u, e.v)] = True
            seen.update((e.u, e.v))
            touch(e.u, e.v, 1)
        elif e.kind in ("discard", "project", "handle"):
            if live.pop((e.u, e.v), None):
                touch(e.u, e.v, -1)
        elif e.kind == "update":
            best = (e.u, e.v)
        if k % every and k != total:
            continue
        active = sorted(x for x, c in refs.items() if c > 0)
        covered = set()
        for x in active:
            while x >= 0 and x not in covered:
                covered.add(x)
                x = nodes[x].parent
        retired = tuple(sorted(x for x in seen if x not in covered
                               and (nodes[x].parent < 0 or nodes[x].parent in covered)))
        spans = sorted((nodes[x].start, nodes[x].end) for x in active)
        points, reach = 0, -1
        for s, t in spans:
            s = max(s, reach)
            if t > s:
                points += t - s
                reach = t
        yield Frame(k, len(live), tuple(active), retired, points, best)


def render_svg(points, tree, frame: Frame, axes=(0, 1), size: int = 480, title: str = "") -> str:
    pts = np.asarray(points, dtype=np.float64)
    a, b = axes
    xs, ys = pts[:, a], pts[:, b]
    x0, x1, y0, y1 = xs.min(), xs.max(), ys.min(), ys.max()
    span = max(x1 - x0, y1 - y0) or 1.0
    pad = 0.05 * span
    scale = size / (span + 2 * pad)

    def X(x):
        return (x - x0 + pad) * scale

    def Y(y):
        return (y1 - y + pad) * scale  # svg y grows downward

    w = (x1 - x0 + 2 * pad) * scale
    h = (y1 - y0 + 2 * pad) * scale
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w:.1f}" height="{h:.1f}" '
        f'viewBox="0 0 {w:.1f} {h:.1f}">',
        f"<title>{escape(title)}</title>",
        f'<rect x="0" y="0" width="{w:.1f}" height="{h:.1f}" fill="white"/>',
    ]

    def rect(nid, style):
        box = tree.nodes[nid].box
        rx, ry = X(box.lo[a]), Y(box.hi[b])
        rw = max((box.hi[a] - box.lo[a]) * scale, 0.5)
        rh = max((box.hi[b] - box.lo[b]) * scale, 0.5)
        return f'<rect x="{rx:.2f}" y="{ry:.2f}" width="{rw:.2f}" height="{rh:.2f}" {style}/>'

    out.append('<g id="retired">')
    out.extend(rect(x, 'fill="#444" fill-opacity="0.55" stroke="none"') for x in frame.retired_nodes)
    out.append("</g>")
    out.append('<g id="points" fill="#1f5fbf">')
    r = max(0.6, min(2.0, 200.0 / math.sqrt(len(pts))))
    out.extend(f'<circle cx="{X(x):.2f}" cy="{Y(y):.2f}" r="{r:.2f}"/>' for x, y in zip(xs.tolist(), ys.tolist()))
    out.append("</g>")
    out.append('<g id="live">')
    out.extend(rect(x, 'fill="none" stroke="#d62728" stroke-width="1"') for x in frame.live_nodes)
    out.append("</g>")
    if frame.best_pair is not None:
        p, q = pts[frame.best_pair[0]], pts[frame.best_pair[1]]
        out.append(f'<line id="best" x1="{X(p[a]):.2f}" y1="{Y(p[b]):.2f}" x2="{X(q[a]):.2f}" '
                   f'y2="{Y(q[b]):.2f}" stroke="#2ca02c" stroke-width="2"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def write_snapshots(points, result, tree, out_dir, every: int, plane: str | None = None,
                    prefix: str = "snap") -> list[tuple[str, Frame]]:
    """Render every frame of ``replay`` into ``out_dir``; returns (path, frame) pairs."""
    pts = np.asarray(points, dtype=np.float64)
    axes = plane_axes(pts.shape[1], plane)
    if result.trace is None:
        raise ValueError("snapshots need a traced run")
    os.makedirs(out_dir, exist_ok=True)
    written = []
    for idx, frame in enumerate(replay(result.trace, tree, every), 1):
        title = (f"{result.algorithm} eps={result.eps:g} event {frame.event_index}: "
                 f"{frame.live_pairs} live pairs")
        path = os.path.join(out_dir, f"{prefix}_{idx:04d}.svg")
        with open(path, "w") as fh:
            fh.write(render_svg(pts, tree, frame, axes, title=title))
        written.append((path, frame))
    return written
