"""Command-line front end.

Exit codes: 0 success, 2 usage error, 3 domain error (asymmetric pair,
disconnected graph), 4 numeric failure (unphysical state, failed
``--verify``).
"""

import argparse
import ast
import math
import operator
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from . import __version__
from .dynamics import AsymmetricPairError, SimConfig, potential
from .entanglement import (
    UnphysicalStateError,
    max_entanglement,
    pair_entanglement,
    trajectory,
)
from .graph import (
    DisconnectedGraphError,
    GraphError,
    build_family,
    distance_classes,
    distance_profile,
    load_edge_list,
    select_class,
)
from .oracle import evolve_numeric
from .report import RunManifest, render
from .spectral import SpectralError

EXIT_USAGE, EXIT_DOMAIN, EXIT_NUMERIC = 2, 3, 4
VERIFY_TOL = 1e-7
TABLE1_SIZES = (3, 4, 5, 6, 7, 8, 9, 10, 15, 20, 30)


class UsageError(ValueError):
    pass


class VerificationError(RuntimeError):
    pass


def parse_graph(spec):
    """``two | complete:N | meanfield:N | path:N | cycle:N | cube | octahedron | file:PATH``"""
    name, sep, arg = spec.partition(":")
    if name == "file":
        if not arg:
            raise GraphError("file: needs a path")
        return load_edge_list(Path(arg).read_bytes())
    if not sep:
        return build_family(name)
    if not arg.isdigit():
        raise GraphError(f"invalid size in graph spec {spec!r}")
    return build_family(name, int(arg))


_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul,
           ast.Div: operator.truediv, ast.Pow: operator.pow}
_NAMES = {"pi": math.pi, "e": math.e}
_FUNCS = {"sqrt": math.sqrt}


def parse_number(text):
    """Evaluate a plain arithmetic expression such as ``pi/sqrt(21)``."""

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
            return float(node.value)
        if isinstance(node, ast.Name) and node.id in _NAMES:
            return _NAMES[node.id]
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            return _BINOPS[type(node.op)](ev(node.left), ev(node.right))
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            return -ev(node.operand) if isinstance(node.op, ast.USub) else ev(node.operand)
        if (isinstance(node, ast.Call) and isinstance(node.func, ast.Name)
                and node.func.id in _FUNCS and len(node.args) == 1 and not node.keywords):
            return _FUNCS[node.func.id](ev(node.args[0]))
        raise ValueError(f"unsupported expression {text!r}")

    try:
        return ev(ast.parse(text.strip(), mode="eval"))
    except SyntaxError:
        raise ValueError(f"invalid number {text!r}") from None


def _number(text):
    try:
        return parse_number(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(str(exc))


def parse_c_range(text):
    parts = text.split(":")
    if len(parts) != 3:
        raise UsageError(f"c-range must be start:stop:steps, got {text!r}")
    start, stop = parse_number(parts[0]), parse_number(parts[1])
    if not parts[2].isdigit() or int(parts[2]) < 1:
        raise UsageError(f"empty c-range {text!r}")
    steps = int(parts[2])
    if start < 0 or stop < start:
        raise UsageError(f"c-range needs 0 <= start <= stop, got {text!r}")
    if steps == 1:
        return [start]
    return [float(x) for x in np.linspace(start, stop, steps)]


def resolve_pair(graph, pair, klass):
    if pair and klass:
        raise UsageError("use either --pair or --class, not both")
    if pair:
        try:
            i, j = (int(x) for x in pair.split(","))
        except ValueError:
            raise UsageError(f"--pair expects i,j, got {pair!r}") from None
        if i == j or not (0 <= i < graph.n and 0 <= j < graph.n):
            raise UsageError(f"invalid pair ({i}, {j}) for a graph with {graph.n} vertices")
        return i, j
    if klass:
        fields = klass.split(":")
        if fields[0] != "distance" or len(fields) not in (2, 3) or not all(f.isdigit() for f in fields[1:]):
            raise UsageError(f"--class expects distance:d[:count], got {klass!r}")
        d = int(fields[1])
        count = int(fields[2]) if len(fields) == 3 else None
        return select_class(graph, d, count)
    if graph.is_complete():
        return 0, 1
    raise UsageError("this graph needs --pair or --class")


def pair_diagnosis(graph, i, j):
    """Human-readable explanation of why two vertices are not equivalent."""
    lines = []
    for v in (i, j):
        prof = distance_profile(graph, v)
        lines.append(f"  vertex {v}: degree {graph.degree(v)}, (distance, paths) profile {list(prof)}")
    return "\n".join(lines)


def oracle_pair_eof(v, t, i, j):
    u = evolve_numeric(v, t)
    gamma = u @ u.T
    n = v.shape[0]
    idx = [i, n + i, j, n + j]
    return pair_entanglement(gamma[np.ix_(idx, idx)]).eof


def _emit(args, manifest, columns, rows):
    if args.out:
        manifest.artifacts["out"] = args.out
    if getattr(args, "svg", None):
        manifest.artifacts["svg"] = args.svg
    text = render(args.format, manifest, columns, rows)
    if args.out:
        Path(args.out).write_text(text, newline="\n")
    else:
        sys.stdout.write(text)


def _plot(path, x, series, xlabel, ylabel, title, marker=None):
    from .plotting import line_plot

    line_plot(path, x, series, xlabel, ylabel, title, marker=marker)


def _check_verify(deviation):
    print(f"verify: max |eof - eof_oracle| = {deviation:.3e}", file=sys.stderr)
    if deviation >= VERIFY_TOL:
        raise VerificationError(f"oracle deviation {deviation:.3e} exceeds {VERIFY_TOL:g}")


def cmd_simulate(args):
    graph = parse_graph(args.graph)
    i, j = resolve_pair(graph, args.pair, getattr(args, "klass", None))
    cfg = SimConfig(graph, args.c, args.tmax, args.samples)
    results = trajectory(cfg, (i, j))
    ts = cfg.times()
    rows = [
        (float(t), r.delta, r.eof, r.rescaled, r.invariants.u, r.invariants.v, r.invariants.w)
        for t, r in zip(ts, results)
    ]
    manifest = RunManifest("simulate", {
        "graph": args.graph, "c": args.c, "pair": f"{i},{j}",
        "t_max": args.tmax, "samples": args.samples,
    })
    if args.verify:
        v = potential(graph, args.c)
        dev = max(abs(oracle_pair_eof(v, t, i, j) - r.eof) for t, r in zip(ts, results))
        manifest.notes.append(f"verify max deviation {dev:.3e}")
        _check_verify(dev)
    columns = ("t", "delta", "eof", "rescaled_eof", "u", "v", "w")
    if args.svg:
        key, label = (3, "rescaled EoF (ebits)") if args.rescaled else (2, "EoF (ebits)")
        _plot(args.svg, ts, {f"pair ({i},{j})": [r[key] for r in rows]},
              "t", label, f"{args.graph}, c = {args.c:g}")
    _emit(args, manifest, columns, rows)


def _table1_point(n, c, per_period):
    graph = build_family("complete", n)
    return max_entanglement(SimConfig(graph, c, 1.0, 2), (0, 1), per_period=per_period)


def _map(fn, items, jobs):
    if jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(fn, *zip(*items)))
    return [fn(*item) for item in items]


def cmd_table1(args):
    sizes = sorted(set(args.sizes))
    if any(n < 3 for n in sizes):
        raise UsageError("table1 sizes must be >= 3 (N = 2 grows without bound)")
    points = _map(_table1_point, [(n, args.c, args.per_period) for n in sizes], args.jobs)
    rows = [(n, p.rescaled, p.t_star) for n, p in zip(sizes, points)]
    manifest = RunManifest("table1", {
        "sizes": ",".join(map(str, sizes)), "c": args.c, "per_period": args.per_period,
    }, notes=["N=2 omitted: its maximum entanglement grows without bound in c"])
    if args.verify:
        dev = 0.0
        for n, p in zip(sizes, points):
            v = potential(build_family("complete", n), args.c)
            dev = max(dev, abs(oracle_pair_eof(v, p.t_star, 0, 1) - p.eof))
        manifest.notes.append(f"verify max deviation {dev:.3e}")
        _check_verify(dev)
    if args.svg:
        _plot(args.svg, sizes, {"max E_r": [r[1] for r in rows]}, "N",
              "saturated rescaled EoF (ebits)", f"complete graphs, c = {args.c:g}", marker="o")
    _emit(args, manifest, ("N", "E_r_max", "t_star"), rows)


def _sweep_point(graph, c, pair, t_max, samples, per_period):
    return max_entanglement(SimConfig(graph, c, t_max, samples), pair, per_period=per_period)


def cmd_sweep(args):
    graph = parse_graph(args.graph)
    pair = resolve_pair(graph, args.pair, args.klass)
    cs = parse_c_range(args.c_range)
    if not graph.is_complete() and args.tmax is None:
        raise UsageError("non-complete graphs need --tmax for the search window")
    t_max = args.tmax if args.tmax is not None else 1.0
    items = [(graph, c, pair, t_max, args.samples, args.per_period) for c in cs]
    points = _map(_sweep_point, items, args.jobs)
    rows = [(c, p.eof, p.rescaled, p.t_star) for c, p in zip(cs, points)]
    manifest = RunManifest("sweep", {
        "graph": args.graph, "pair": f"{pair[0]},{pair[1]}", "c_range": args.c_range,
        "t_max": args.tmax if args.tmax is not None else "one period",
        "samples": args.samples, "per_period": args.per_period,
    })
    if args.verify:
        dev = max(abs(oracle_pair_eof(potential(graph, c), p.t_star, *pair) - p.eof)
                  for c, p in zip(cs, points))
        manifest.notes.append(f"verify max deviation {dev:.3e}")
        _check_verify(dev)
    if args.svg:
        key, label = (2, "max rescaled EoF (ebits)") if args.rescaled else (1, "max EoF (ebits)")
        _plot(args.svg, cs, {args.graph: [r[key] for r in rows]}, "c", label,
              f"pair {pair[0]},{pair[1]}", marker=".")
    _emit(args, manifest, ("c", "E_max", "E_r_max", "t_star"), rows)


def cmd_classes(args):
    graph = parse_graph(args.graph)
    classes = distance_classes(graph)
    rows = [(k.distance, k.paths, k.representative[0], k.representative[1], k.size) for k in classes]
    manifest = RunManifest("classes", {"graph": args.graph})
    _emit(args, manifest, ("distance", "paths", "i", "j", "size"), rows)


def _sizes(text):
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="graphent",
        description="Entanglement dynamics of coupled oscillators on symmetric graphs.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def outputs(p, svg=True):
        p.add_argument("--out", help="output file (default: stdout)")
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        if svg:
            p.add_argument("--svg", help="figure path; format follows the extension")
            p.add_argument("--rescaled", action="store_true",
                           help="plot (N-1) x EoF instead of EoF")
            p.add_argument("--verify", action="store_true", help=argparse.SUPPRESS)

    def pair_opts(p):
        p.add_argument("--pair", help="explicit vertex pair i,j")
        p.add_argument("--class", dest="klass", help="distance:d[:count] class representative")

    p = sub.add_parser("simulate", help="EoF time series for one vertex pair")
    p.add_argument("--graph", required=True)
    p.add_argument("--c", type=_number, default=5.0, help="coupling constant (default 5)")
    pair_opts(p)
    p.add_argument("--tmax", type=_number, required=True)
    p.add_argument("--samples", type=int, default=1000)
    outputs(p)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("table1", help="saturated rescaled EoF of complete graphs")
    p.add_argument("--sizes", type=_sizes, default=list(TABLE1_SIZES))
    p.add_argument("--c", type=_number, default=1e6)
    p.add_argument("--per-period", type=int, default=400)
    p.add_argument("--jobs", type=int, default=1)
    outputs(p)
    p.set_defaults(func=cmd_table1)

    p = sub.add_parser("sweep", help="maximum EoF as a function of the coupling")
    p.add_argument("--graph", required=True)
    p.add_argument("--c-range", required=True, help="start:stop:steps (inclusive)")
    pair_opts(p)
    p.add_argument("--tmax", type=_number, help="search window for non-complete graphs")
    p.add_argument("--samples", type=int, default=2000)
    p.add_argument("--per-period", type=int, default=400)
    p.add_argument("--jobs", type=int, default=1)
    outputs(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("classes", help="vertex pairs grouped by distance and path count")
    p.add_argument("--graph", required=True)
    outputs(p, svg=False)
    p.set_defaults(func=cmd_classes)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except (AsymmetricPairError, DisconnectedGraphError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        if isinstance(exc, AsymmetricPairError) and hasattr(args, "graph"):
            graph = parse_graph(args.graph)
            pair = resolve_pair(graph, args.pair, getattr(args, "klass", None))
            print("the pair is not related by a graph symmetry:\n" + pair_diagnosis(graph, *pair),
                  file=sys.stderr)
        return EXIT_DOMAIN
    except (UnphysicalStateError, SpectralError, VerificationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (GraphError, UsageError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return 0


if __name__ == "__main__":
    sys.exit(main())
