"""Point cloud readers (XYZ, OFF, ASCII PLY) and result records.

CSV column order (``CSV_COLUMNS``)::

    algorithm,eps,n,d,distance,i,j,pairs_created,distance_evals,nodes_built,heap_ops,wall_ms

Floats in CSV and XYZ output use ``%.17g``: 1.0 prints as ``1``, and every
value reads back bit-exact. JSON uses Python's shortest round-trip repr.
"""

from __future__ import annotations

import csv
import io
import json
import os
from dataclasses import asdict, dataclass, field

import numpy as np

FORMATS = ("xyz", "off", "ply")
CSV_COLUMNS = ("algorithm", "eps", "n", "d", "distance", "i", "j", "pairs_created",
               "distance_evals", "nodes_built", "heap_ops", "wall_ms")


class PointFormatError(ValueError):
    """Malformed point file; ``line`` is 1-based when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class UnsupportedFormatError(PointFormatError):
    pass


def fmt_float(x: float) -> str:
    return format(float(x), ".17g")


def infer_format(path) -> str:
    ext = os.path.splitext(str(path))[1].lower().lstrip(".")
    if ext in ("xyz", "txt", "pts"):
        return "xyz"
    if ext in FORMATS:
        return ext
    raise UnsupportedFormatError(f"cannot infer point format from {path!r}; pass a format")


def _floats(tokens, lineno):
    try:
        return [float(t) for t in tokens]
    except ValueError:
        raise PointFormatError(f"expected numbers, got {' '.join(tokens)!r}", lineno) from None


def _data_lines(text):
    """(lineno, tokens) for non-blank lines with '#' comments stripped."""
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def parse_xyz(text: str) -> np.ndarray:
    rows, dim = [], None
    for lineno, tokens in _data_lines(text):
        vals = _floats(tokens, lineno)
        if dim is None:
            dim = len(vals)
        elif len(vals) != dim:
            raise PointFormatError(f"expected {dim} coordinates, got {len(vals)}", lineno)
        rows.append(vals)
    if not rows:
        raise PointFormatError("no points found")
    return np.array(rows, dtype=np.float64)


def parse_off(text: str) -> np.ndarray:
    lines = _data_lines(text)
    try:
        lineno, tokens = next(lines)
    except StopIteration:
        raise PointFormatError("empty OFF file") from None
    if not tokens[0].upper().endswith("OFF"):
        raise PointFormatError(f"missing OFF header, got {tokens[0]!r}", lineno)
    tokens = tokens[1:]  # counts may share the header line
    if not tokens:
        try:
            lineno, tokens = next(lines)
        except StopIteration:
            raise PointFormatError("missing OFF counts line") from None
    counts = _floats(tokens, lineno)
    if len(counts) < 1 or counts[0] != int(counts[0]) or counts[0] < 0:
        raise PointFormatError("bad OFF counts line", lineno)
    nv = int(counts[0])
    rows = []
    for _ in range(nv):
        try:
            lineno, tokens = next(lines)
        except StopIteration:
            raise PointFormatError(f"OFF declares {nv} vertices, found {len(rows)}") from None
        vals = _floats(tokens, lineno)
        if len(vals) < 3:
            raise PointFormatError(f"vertex needs 3 coordinates, got {len(vals)}", lineno)
        rows.append(vals[:3])
    if not rows:
        raise PointFormatError("OFF file has no vertices")
    return np.array(rows, dtype=np.float64)


def parse_ply(text: str) -> np.ndarray:
    lines = text.splitlines()
    if not lines or lines[0].strip() != "ply":
        raise PointFormatError("missing 'ply' magic", 1)
    elements = []  # [name, count, [props]]
    fmt = None
    body = None
    for lineno, raw in enumerate(lines[1:], 2):
        tokens = raw.split()
        if not tokens or tokens[0] in ("comment", "obj_info"):
            continue
        if tokens[0] == "format":
            fmt = tokens[1] if len(tokens) > 1 else ""
            if fmt != "ascii":
                raise UnsupportedFormatError(f"PLY format {fmt!r} is not supported (ascii only)", lineno)
        elif tokens[0] == "element":
            if len(tokens) != 3:
                raise PointFormatError("bad element line", lineno)
            elements.append([tokens[1], int(tokens[2]), []])
        elif tokens[0] == "property":
            if not elements:
                raise PointFormatError("property before any element", lineno)
            elements[-1][2].append(tokens[1:])
        elif tokens[0] == "end_header":
            body = lineno
            break
        else:
            raise PointFormatError(f"unexpected header keyword {tokens[0]!r}", lineno)
    if fmt is None:
        raise PointFormatError("PLY header lacks a format line")
    if body is None:
        raise PointFormatError("PLY header lacks end_header")
    pos = body  # index into ``lines`` of the first body line
    out = None
    for name, count, props in elements:
        if name != "vertex":
            pos += count  # one line per element in ascii PLY
            continue
        names = [p[-1] for p in props]
        if any(p[0] == "list" for p in props):
            raise PointFormatError("list properties on vertices are not supported")
        try:
            cols = [names.index(c) for c in ("x", "y", "z")]
        except ValueError:
            raise PointFormatError("vertex element lacks x/y/z properties") from None
        rows = []
        for k in range(count):
            lineno = pos + k + 1
            if pos + k >= len(lines):
                raise PointFormatError(f"PLY declares {count} vertices, found {k}")
            vals = _floats(lines[pos + k].split(), lineno)
            if len(vals) != len(names):
                raise PointFormatError(f"expected {len(names)} values, got {len(vals)}", lineno)
            rows.append([vals[c] for c in cols])
        out = np.array(rows, dtype=np.float64).reshape(-1, 3)
        pos += count
    if out is None or len(out) == 0:
        raise PointFormatError("PLY file has no vertices")
    return out


_PARSERS = {"xyz": parse_xyz, "off": parse_off, "ply": parse_ply}


def read_points(path, fmt: str | None = None) -> np.ndarray:
    """Read a point file; ``fmt`` is one of xyz/off/ply or inferred from the suffix."""
    fmt = (fmt or infer_format(path)).lower()
    if fmt not in _PARSERS:
        raise UnsupportedFormatError(f"unknown point format {fmt!r}")
    with open(path, "rb") as fh:
        raw = fh.read()
    if fmt == "ply" and raw.startswith(b"ply") and b"format binary" in raw[:512]:
        raise UnsupportedFormatError("binary PLY is not supported (ascii only)")
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError:
        raise UnsupportedFormatError(f"{path} is not a text file") from None
    return _PARSERS[fmt](text)


def format_xyz(points) -> str:
    pts = np.asarray(points, dtype=np.float64)
    return "".join(" ".join(fmt_float(x) for x in row) + "\n" for row in pts.tolist())


def write_points(points, path) -> None:
    with open(path, "w") as fh:
        fh.write(format_xyz(points))


@dataclass
class ResultRecord:
    algorithm: str
    eps: float
    input: str
    i: int
    j: int
    distance: float
    stats: dict = field(default_factory=dict)
    metadata: dict = field(default_factory=dict)

    @classmethod
    def from_result(cls, result, input_desc: str, n: int, d: int, **metadata) -> "ResultRecord":
        stats = result.stats.as_dict()
        return cls(result.algorithm, float(result.eps), input_desc,
                   int(result.best_pair[0]), int(result.best_pair[1]),
                   float(result.best_distance), stats, {"n": n, "d": d, **metadata})

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "ResultRecord":
        return cls(**json.loads(text))

    def csv_values(self) -> list[str]:
        s, m = self.stats, self.metadata
        return [
            self.algorithm, fmt_float(self.eps), str(m.get("n", "")), str(m.get("d", "")),
            fmt_float(self.distance), str(self.i), str(self.j),
            str(s.get("pairs_created", 0)), str(s.get("distance_evaluations", 0)),
            str(s.get("nodes_built", 0)), str(s.get("heap_ops", 0)),
            fmt_float(s.get("wall_time", 0.0) * 1000.0),
        ]

    def to_csv_row(self, header: bool = False) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        if header:
            w.writerow(CSV_COLUMNS)
        w.writerow(self.csv_values())
        return buf.getvalue()

    @classmethod
    def from_csv_row(cls, row: str, input_desc: str = "") -> "ResultRecord":
        vals = next(csv.reader([row.strip()]))
        if len(vals) != len(CSV_COLUMNS):
            raise ValueError(f"expected {len(CSV_COLUMNS)} columns, got {len(vals)}")
        v = dict(zip(CSV_COLUMNS, vals))
        stats = {
            "pairs_created": int(v["pairs_created"]),
            "distance_evaluations": int(v["distance_evals"]),
            "nodes_built": int(v["nodes_built"]),
            "heap_ops": int(v["heap_ops"]),
            "wall_time": float(v["wall_ms"]) / 1000.0,
        }
        meta = {"n": int(v["n"]), "d": int(v["d"])}
        return cls(v["algorithm"], float(v["eps"]), input_desc, int(v["i"]), int(v["j"]),
                   float(v["distance"]), stats, meta)


def write_result(record: ResultRecord, fmt: str = "json") -> str:
    fmt = fmt.lower()
    if fmt == "json":
        return record.to_json()
    if fmt in ("csv", "csv_row"):
        return record.to_csv_row()
    raise ValueError(f"unknown result format {fmt!r}")
