"""Synthetic point sets: sphere, two far arcs, cube, ellipse.

All randomness comes from ``numpy.random.Generator(PCG64(seed))``; the same
``GenSpec`` always yields the same array.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

RNG_ALGORITHM = "numpy.random.PCG64"
FAMILIES = ("sphere", "arcs", "cube", "ellipse")


def _rng(seed) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def _check_n(n, least=1):
    if int(n) != n or n < least:
        raise ValueError(f"n must be an integer >= {least}, got {n}")
    return int(n)


def gen_sphere(n: int, seed: int = 0, d: int = 3) -> np.ndarray:
    """Uniform on the unit sphere S^{d-1} (normalized Gaussians)."""
    n = _check_n(n)
    g = _rng(seed).standard_normal((n, d))
    norms = np.linalg.norm(g, axis=1, keepdims=True)
    while np.any(norms == 0):  # probability zero, but never divide by it
        g[norms[:, 0] == 0] = 1.0
        norms = np.linalg.norm(g, axis=1, keepdims=True)
    return g / norms


def gen_cube(n: int, seed: int = 0, d: int = 3) -> np.ndarray:
    """Uniform in [0, 1]^d."""
    n = _check_n(n)
    return _rng(seed).random((n, d))


def gen_ellipse(n: int, axes=(2.0, 1.0), d: int = 3) -> np.ndarray:
    """``n`` evenly spaced parameter samples of an ellipse in the first two
    coordinates (other coordinates zero). Parameter 0 is always sampled, and
    parameter pi too when ``n`` is even."""
    n = _check_n(n)
    if d < 2:
        raise ValueError("an ellipse needs d >= 2")
    a, b = axes
    t = 2.0 * math.pi * np.arange(n) / n
    pts = np.zeros((n, d))
    pts[:, 0] = a * np.cos(t)
    pts[:, 1] = b * np.sin(t)
    if n % 2 == 0:
        # cos(pi) is exactly -1 but sin(pi) is not 0; pin the far vertex
        pts[n // 2, :2] = (-a, 0.0)
    return pts


def _tilt(d: int) -> np.ndarray:
    """Fixed rotation taking e1 to the main diagonal and mixing the rest."""
    m = np.eye(d)
    m[:, 0] = 1.0
    m[:, 1:] += np.tri(d, d - 1, -1) * 0.5  # deterministic, full rank
    q, r = np.linalg.qr(m)
    q *= np.sign(np.diag(r))
    if np.linalg.det(q) < 0:
        q[:, -1] *= -1
    return q


def gen_arcs(n: int, seed: int = 0, arc_width: float = 0.05, separation: float = 1.0,
             arc_radius: float | None = None, rotate: bool = True, d: int = 3) -> np.ndarray:
    """Two tiny circular arcs far apart, tangents at their midpoints orthogonal.

    Arc midpoints sit ``separation`` apart on the first axis; each arc has
    angular width ``arc_width`` and bulges away from the other arc. The default
    ``arc_radius`` of ``separation / 2`` puts both arcs on one sphere around the
    midpoint, so every inter-arc pair is within a factor
    ~(1 - arc_width**2 / 16) of the diameter. With ``rotate`` the set is turned
    so the inter-arc axis lies along the main diagonal, aligned with no
    coordinate axis. ``n / 2`` points are drawn uniformly in angle on each arc.
    """
    n = _check_n(n, 2)
    if n % 2:
        raise ValueError(f"n must be even for two arcs, got {n}")
    if d < 2:
        raise ValueError("arcs need d >= 2")
    if not 0 < arc_width < math.pi:
        raise ValueError("arc_width must be in (0, pi)")
    half = n // 2
    rng = _rng(seed)
    rho = separation / 2.0 if arc_radius is None else float(arc_radius)
    if rho <= 0:
        raise ValueError("arc_radius must be positive")
    s = rng.uniform(-arc_width / 2, arc_width / 2, half)
    t = rng.uniform(-arc_width / 2, arc_width / 2, half)
    pts = np.zeros((n, d))
    # arc A around -sep/2 e1, tangent e2; arc B around +sep/2 e1, tangent e3 (e2 in the plane)
    pts[:half, 0] = -separation / 2 + rho * (1.0 - np.cos(s))
    pts[:half, 1] = rho * np.sin(s)
    pts[half:, 0] = separation / 2 - rho * (1.0 - np.cos(t))
    pts[half:, 2 if d >= 3 else 1] = rho * np.sin(t)
    if rotate:
        pts = pts @ _tilt(d).T
    return pts


@dataclass(frozen=True)
class GenSpec:
    family: str
    n: int
    seed: int = 0
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; expected one of {FAMILIES}")
        _check_n(self.n)

    def generate(self) -> np.ndarray:
        p = dict(self.params)
        if self.family == "sphere":
            return gen_sphere(self.n, self.seed, **p)
        if self.family == "cube":
            return gen_cube(self.n, self.seed, **p)
        if self.family == "arcs":
            return gen_arcs(self.n, self.seed, **p)
        if "axes" not in p and ("a" in p or "b" in p):
            p["axes"] = (p.pop("a", 2.0), p.pop("b", 1.0))
        return gen_ellipse(self.n, **p)

    def describe(self) -> str:
        extra = "".join(f":{k}={v}" for k, v in sorted(self.params.items()))
        return f"{self.family}:n={self.n}:seed={self.seed}{extra}"


_INT_KEYS = {"n", "seed", "d"}
_BOOL_KEYS = {"rotate"}


def parse_gen_spec(text: str, default_seed: int = 0) -> GenSpec:
    """Parse ``FAMILY:key=value:...``, e.g. ``sphere:n=1000:seed=7``."""
    family, *items = text.strip().split(":")
    values: dict = {}
    for item in items:
        if "=" not in item:
            raise ValueError(f"bad generator option {item!r} in {text!r}")
        key, raw = item.split("=", 1)
        if key in _INT_KEYS:
            values[key] = int(raw)
        elif key in _BOOL_KEYS:
            if raw.lower() not in ("0", "1", "true", "false", "yes", "no"):
                raise ValueError(f"bad boolean {raw!r} for {key}")
            values[key] = raw.lower() in ("1", "true", "yes")
        else:
            values[key] = float(raw)
    if "n" not in values:
        raise ValueError(f"generator spec {text!r} needs n=")
    n = values.pop("n")
    seed = values.pop("seed", default_seed)
    return GenSpec(family, n, seed, values)
