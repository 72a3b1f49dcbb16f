"""Benchmark matrix: every (algorithm, eps, input) cell, timed and checked.

Rows are grouped the way the timing tables are read: eps = 0 first, then
increasing eps, then the constant-factor algorithms (which take no eps).
"""

from __future__ import annotations

import io
import math
import statistics
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import algorithms as algos
from .baselines import brute_force_diameter
from .pcio import CSV_COLUMNS, ResultRecord, fmt_float

# Lower-bound slack for approximate cells: floating noise, not approximation error.
_REL_SLACK = 1e-12


@dataclass(frozen=True)
class BenchInput:
    name: str
    points: np.ndarray = field(repr=False)
    seed: int | None = None


@dataclass
class BenchConfig:
    inputs: list
    algorithms: list
    eps: list = field(default_factory=lambda: [0.0, 0.01, 0.1])
    repetitions: int = 1
    oracle_cutoff: int = 5000
    parallel: bool = False

    def __post_init__(self):
        if not self.inputs:
            raise ValueError("bench needs at least one input")
        if not self.algorithms:
            raise ValueError("bench needs at least one algorithm")
        if self.repetitions < 1:
            raise ValueError("repetitions must be >= 1")
        for name in self.algorithms:
            algos.get(name)
        if any(e < 0 for e in self.eps):
            raise ValueError("eps values must be >= 0")


@dataclass
class BenchRow:
    input: str
    algorithm: str
    eps: float | None  # None for constant-factor algorithms
    status: str  # ok | skipped | error
    record: ResultRecord | None = None
    median_ms: float | None = None
    oracle: float | None = None
    violation: str = ""
    message: str = ""

    @property
    def eps_label(self) -> str:
        return "const" if self.eps is None else format(self.eps, "g")


def cell_order(config: BenchConfig) -> list[tuple[str, float | None]]:
    """(algorithm, eps) in table order; eps-free algorithms come last."""
    eps_algos = [a for a in config.algorithms if algos.get(a).eps_mode != algos.EPS_NONE]
    const_algos = [a for a in config.algorithms if algos.get(a).eps_mode == algos.EPS_NONE]
    cells = [(a, e) for e in sorted(set(config.eps)) for a in eps_algos]
    return cells + [(a, None) for a in const_algos]


def check_cell(distance: float, oracle: float, eps: float | None, d: int) -> str:
    """Empty string when ``distance`` honours its guarantee against ``oracle``."""
    if distance > oracle:
        return f"above oracle ({fmt_float(distance)} > {fmt_float(oracle)})"
    if eps is None:
        if distance * math.sqrt(d) < oracle * (1 - _REL_SLACK):
            return f"below oracle/sqrt(d) ({fmt_float(distance)})"
    elif eps == 0:
        if distance != oracle:
            return f"not exact ({fmt_float(distance)} != {fmt_float(oracle)})"
    elif distance < (1 - eps) * oracle * (1 - _REL_SLACK):
        return f"below (1-eps)*oracle ({fmt_float(distance)})"
    return ""


def _run_cell(args):
    inp, name, eps, reps, oracle = args
    alg = algos.get(name)
    run_eps = 0.0 if eps is None else eps
    if not alg.accepts(run_eps):
        return BenchRow(inp.name, name, eps, "skipped", message="requires eps > 0")
    n, d = inp.points.shape
    times, res = [], None
    try:
        for _ in range(reps):
            res = alg(inp.points, run_eps)
            times.append(res.stats.wall_time * 1000.0)
    except Exception as exc:  # recorded in the table; the run goes on
        return BenchRow(inp.name, name, eps, "error", message=f"{type(exc).__name__}: {exc}")
    med = statistics.median(times)
    rec = ResultRecord.from_result(res, inp.name, n, d, seed=inp.seed)
    rec.stats["wall_time"] = med / 1000.0
    violation = "" if oracle is None else check_cell(res.best_distance, oracle, eps, d)
    return BenchRow(inp.name, name, eps, "ok", rec, med, oracle, violation)


def run_bench(config: BenchConfig) -> list[BenchRow]:
    oracles = {}
    for inp in config.inputs:
        n = inp.points.shape[0]
        if 2 <= n <= config.oracle_cutoff:
            oracles[inp.name] = brute_force_diameter(inp.points).best_distance
    jobs = [(inp, a, e, config.repetitions, oracles.get(inp.name))
            for a, e in cell_order(config) for inp in config.inputs]
    if config.parallel:
        with ProcessPoolExecutor() as pool:
            return list(pool.map(_run_cell, jobs))
    return [_run_cell(j) for j in jobs]


BENCH_CSV_COLUMNS = CSV_COLUMNS + ("input", "status", "violation")


def format_csv(rows: list[BenchRow]) -> str:
    import csv

    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(BENCH_CSV_COLUMNS)
    for r in rows:
        if r.record is not None:
            vals = r.record.csv_values()
            vals[1] = r.eps_label
        else:
            vals = [r.algorithm, r.eps_label] + [""] * (len(CSV_COLUMNS) - 2)
        w.writerow(vals + [r.input, r.status if not r.message else f"{r.status}: {r.message}", r.violation])
    return buf.getvalue()


def format_markdown(rows: list[BenchRow]) -> str:
    """Median milliseconds, one row per (algorithm, eps), one column per input."""
    inputs = list(dict.fromkeys(r.input for r in rows))
    keys = list(dict.fromkeys((r.algorithm, r.eps_label) for r in rows))
    cell = {(r.algorithm, r.eps_label, r.input): r for r in rows}
    head = ["algorithm", "eps"] + inputs + ["violations"]
    lines = ["| " + " | ".join(head) + " |", "|" + "---|" * len(head)]
    for algo, eps in keys:
        vals, bad = [], []
        for name in inputs:
            r = cell.get((algo, eps, name))
            if r is None:
                vals.append("")
            elif r.status == "ok":
                vals.append(f"{r.median_ms:.2f}")
                if r.violation:
                    bad.append(name)
            else:
                vals.append(r.status)
        lines.append("| " + " | ".join([algo, eps] + vals + [", ".join(bad)]) + " |")
    return "\n".join(lines) + "\n"
