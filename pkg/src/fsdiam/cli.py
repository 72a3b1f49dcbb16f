"""``fsdiam`` command line: compute, bench, gen, snapshot.

Exit codes: 0 success, 1 algorithm or input failure, 2 usage error.
``DIAM_SEED`` supplies the seed when neither ``--seed`` nor the ``--gen``
spec names one.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import algorithms as algos
from .bench import BenchConfig, BenchInput, format_csv, format_markdown, run_bench
from .engine import PairRefinement, Strategy
from .generators import RNG_ALGORITHM, parse_gen_spec
from .pcio import FORMATS, CSV_COLUMNS, PointFormatError, ResultRecord, format_xyz, read_points
from .snapshot import PLANES, plane_axes, write_snapshots

EXIT_FAILURE, EXIT_USAGE = 1, 2


class UsageError(Exception):
    pass


class InputFailure(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _eps(text):
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not v >= 0 or v == float("inf"):
        raise argparse.ArgumentTypeError(f"eps must be finite and >= 0, got {text}")
    return v


def _positive_int(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {v}")
    return v


def _add_input(p, multiple=False):
    action = "append" if multiple else "store"
    p.add_argument("--in", dest="inputs", action=action, metavar="PATH", help="point file")
    p.add_argument("--format", choices=FORMATS, help="point file format (default: from suffix)")
    p.add_argument("--gen", dest="gens", action=action, metavar="FAMILY:k=v:...",
                   help="synthetic input, e.g. sphere:n=1000:seed=7")
    p.add_argument("--seed", type=int, help="default generator seed (env DIAM_SEED)")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="fsdiam", description="Point-set diameter via fair split trees.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("compute", help="run one algorithm on one input")
    _add_input(c)
    c.add_argument("--algo", default="fs-wspd", help="algorithm name")
    c.add_argument("--eps", type=_eps, default=0.0)
    c.add_argument("--out", choices=("json", "csv", "md"), default="json")
    c.add_argument("--trace", action="store_true", help="include the event trace (fs-* only)")

    b = sub.add_parser("bench", help="time an algorithm x eps x input matrix")
    _add_input(b, multiple=True)
    b.add_argument("--algo", action="append", help="algorithm name or comma list; repeatable")
    b.add_argument("--eps", type=_eps, action="append", help="repeatable (default 0, 0.01, 0.1)")
    b.add_argument("--repetitions", type=_positive_int, default=1)
    b.add_argument("--oracle-cutoff", type=int, default=5000,
                   help="validate against brute force when n <= this")
    b.add_argument("--out", choices=("csv", "md"), default="md")
    b.add_argument("--parallel", action="store_true",
                   help="run cells in worker processes (wall times become indicative)")

    g = sub.add_parser("gen", help="write a synthetic point set as XYZ")
    g.add_argument("--gen", required=True, metavar="FAMILY:k=v:...")
    g.add_argument("--seed", type=int)
    g.add_argument("-o", "--output", metavar="PATH", help="file to write (default stdout)")

    s = sub.add_parser("snapshot", help="SVG frames of a traced run")
    _add_input(s)
    s.add_argument("--algo", default="fs-heap", choices=algos.FS_TRACEABLE)
    s.add_argument("--eps", type=_eps, default=0.0)
    s.add_argument("--every", type=_positive_int, default=50, help="events per frame")
    s.add_argument("--plane", choices=tuple(PLANES), help="projection plane for 3-D input")
    s.add_argument("--out-dir", default="snapshots")
    return ap


def _default_seed(args) -> int:
    if getattr(args, "seed", None) is not None:
        return args.seed
    env = os.environ.get("DIAM_SEED")
    if env is None or env == "":
        return 0
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"DIAM_SEED must be an integer, got {env!r}") from None


def _gen_input(text, seed) -> BenchInput:
    try:
        spec = parse_gen_spec(text, seed)
    except ValueError as exc:
        raise UsageError(f"--gen: {exc}") from None
    try:
        pts = spec.generate()
    except (TypeError, ValueError) as exc:
        raise UsageError(f"--gen {text}: {exc}") from None
    return BenchInput(spec.describe(), pts, spec.seed)


def _file_input(path, fmt) -> BenchInput:
    try:
        pts = read_points(path, fmt)
    except OSError as exc:
        raise InputFailure(f"{path}: {exc.strerror or exc}") from None
    except PointFormatError as exc:
        raise InputFailure(f"{path}: {exc}") from None
    return BenchInput(str(path), pts)


def _single_input(args) -> BenchInput:
    if (args.inputs is None) == (args.gens is None):
        raise UsageError("give exactly one of --in or --gen")
    if args.gens is not None:
        return _gen_input(args.gens, _default_seed(args))
    return _file_input(args.inputs, args.format)


def _algorithm(name, eps):
    try:
        alg = algos.get(name)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if not alg.accepts(eps):
        raise UsageError(f"{name} requires eps > 0")
    return alg


def _md_row(rec: ResultRecord) -> str:
    head = "| " + " | ".join(CSV_COLUMNS) + " |\n|" + "---|" * len(CSV_COLUMNS) + "\n"
    return head + "| " + " | ".join(rec.csv_values()) + " |\n"


def cmd_compute(args, out) -> int:
    alg = _algorithm(args.algo, args.eps)
    if args.trace and alg.name not in algos.FS_TRACEABLE:
        raise UsageError(f"--trace needs one of {', '.join(algos.FS_TRACEABLE)}")
    inp = _single_input(args)
    n, d = inp.points.shape
    try:
        if args.trace:
            res = _traced_run(alg.name, inp.points, args.eps)[0]
        else:
            res = alg(inp.points, args.eps)
    except Exception as exc:
        raise InputFailure(f"{alg.name} failed: {type(exc).__name__}: {exc}") from None
    meta = {"seed": inp.seed, "rng": RNG_ALGORITHM} if inp.seed is not None else {}
    if res.trace is not None:
        meta["trace"] = [[e.kind, e.u, e.v, e.value] for e in res.trace.events]
    rec = ResultRecord.from_result(res, inp.name, n, d, **meta)
    if args.out == "json":
        out.write(rec.to_json() + "\n")
    elif args.out == "csv":
        out.write(rec.to_csv_row(header=True))
    else:
        out.write(_md_row(rec))
    return 0


def _split_names(values):
    names = []
    for v in values or ():
        names.extend(x.strip() for x in v.split(",") if x.strip())
    return names


def cmd_bench(args, out) -> int:
    seed = _default_seed(args)
    inputs = [_gen_input(g, seed) for g in args.gens or ()]
    inputs += [_file_input(p, args.format) for p in args.inputs or ()]
    names = _split_names(args.algo) or ["fs-heap", "fs-wspd", "fs-levels", "fs-directions", "grid",
                                        "grid-fs-dir", "chan", "chan-mod", "dir-search", "bbox", "pca"]
    try:
        config = BenchConfig(inputs, names, args.eps or [0.0, 0.01, 0.1], args.repetitions,
                             args.oracle_cutoff, args.parallel)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    rows = run_bench(config)
    out.write(format_csv(rows) if args.out == "csv" else format_markdown(rows))
    return 0


def cmd_gen(args, out) -> int:
    inp = _gen_input(args.gen, _default_seed(args))
    text = format_xyz(inp.points)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        out.write(text)
    return 0


def _traced_run(name, points, eps):
    if name == "fs-directions":
        run = PairRefinement(points, eps, Strategy.HEAP_4WAY, trace=True, directions=True)
    else:
        strategy = {"fs-heap": Strategy.HEAP_4WAY, "fs-wspd": Strategy.HEAP_WSPD,
                    "fs-levels": Strategy.FIFO_LEVELS}[name]
        run = PairRefinement(points, eps, strategy, trace=True)
    return run.run(), run.tree


def cmd_snapshot(args, out) -> int:
    _algorithm(args.algo, args.eps)
    inp = _single_input(args)
    try:
        plane_axes(inp.points.shape[1], args.plane)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    try:
        res, tree = _traced_run(args.algo, inp.points, args.eps)
    except Exception as exc:
        raise InputFailure(f"{args.algo} failed: {type(exc).__name__}: {exc}") from None
    written = write_snapshots(inp.points, res, tree, args.out_dir, args.every, args.plane)
    for path, frame in written:
        out.write(f"{path}\tevent={frame.event_index}\tlive_pairs={frame.live_pairs}\t"
                  f"active_points={frame.active_points}\n")
    return 0


_COMMANDS = {"compute": cmd_compute, "bench": cmd_bench, "gen": cmd_gen, "snapshot": cmd_snapshot}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        return _COMMANDS[args.command](args, out)
    except UsageError as exc:
        print(f"fsdiam: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InputFailure as exc:
        print(f"fsdiam: {exc}", file=sys.stderr)
        return EXIT_FAILURE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)


if __name__ == "__main__":
    sys.exit(main())
