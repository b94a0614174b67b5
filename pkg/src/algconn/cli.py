"""Command-line interface.

Every subcommand reads graphs from one source grammar (``named:NAME``, a
file of graph6 lines, or a graph6 literal), emits machine-readable output
on stdout (JSON by default; CSV via ``--format csv``; the table-shaped
``augment`` and ``compare`` commands default to CSV), and keeps all
diagnostics on stderr.  Floats are printed with 12 significant digits.
Output is identical across runs and thread counts; wall-clock time is
only included when ``--timing`` is given.

Exit codes: 0 success (verify: exhaustive PASS), 1 usage or I/O error,
2 verify FAIL, 3 verify PASS from sampling only.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import time
from typing import Optional

import numpy as np

from .augment import compare_families, edge_augmentation
from .bounds import bound_report
from .families import named, named_graph_names
from .graphs import Graph, GraphFormatError, graph6_decode, graph6_encode
from .search import (
    enumerate_cubic,
    enumerate_graphs,
    enumerate_trees,
    maximize_lambda2,
    verify_conjecture_cubic,
    verify_conjecture_k2,
    verify_conjecture_tree2,
)
from .spectral import (
    algebraic_connectivity,
    consensus_decay_rate,
    fiedler_vector,
)
from .treetools import find_splitting_vertex, split_spectral_bound


def _load_graph(source: str) -> Graph:
    """Resolve the shared graph-source grammar.

    ``named:NAME`` | path to a file whose first non-comment line is graph6 |
    graph6 literal.
    """
    if source.startswith("named:"):
        return named(source[len("named:") :])
    if os.path.exists(source):
        with open(source, "r", encoding="ascii") as fh:
            for line in fh:
                line = line.strip()
                if line:
                    return graph6_decode(line)
        raise GraphFormatError(f"no graph6 line found in {source!r}")
    return graph6_decode(source)


def _round12(obj):
    # 12 significant digits, applied recursively before serialization
    if isinstance(obj, float):
        return float(f"{obj:.12g}")
    if isinstance(obj, dict):
        return {k: _round12(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round12(v) for v in obj]
    return obj


def _csv_cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return f"{v:.12g}"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (list, tuple)):
        return ";".join(_csv_cell(x) for x in v)
    return str(v)


def _emit(command: str, params: dict, results, fmt: str, wall: Optional[float]):
    if fmt == "json":
        record = {"command": command, "parameters": params, "results": results}
        if wall is not None:
            record["wall_time"] = wall
        print(json.dumps(_round12(record)))
        return
    rows = results if isinstance(results, list) else [results]
    writer = csv.writer(sys.stdout, lineterminator="\n")
    header = list(rows[0].keys()) if rows else []
    if wall is not None:
        header = header + ["wall_time"]
    writer.writerow(header)
    for row in rows:
        cells = [_csv_cell(v) for v in row.values()]
        if wall is not None:
            cells.append(_csv_cell(wall))
            wall = None  # only on the first row
        writer.writerow(cells)


def _threads(args) -> Optional[int]:
    if args.threads is not None:
        return args.threads
    if os.environ.get("ALGCONN_THREADS"):
        return None  # let the library read the env var
    return os.cpu_count() or 1


def _echo_params(args) -> dict:
    skip = {"func", "command", "format", "timing", "threads"}
    return {k: v for k, v in vars(args).items() if k not in skip}


# ---------------------------------------------------------------------------
# subcommand handlers: return (params, results, default_format[, exit_code])
# ---------------------------------------------------------------------------


def _cmd_lambda2(args):
    g = _load_graph(args.source)
    results = {
        "n": g.n,
        "m": g.m,
        "lambda2": algebraic_connectivity(g),
    }
    if args.vector:
        results["fiedler_vector"] = [float(x) for x in fiedler_vector(g).vector]
    return {"source": args.source, "vector": args.vector}, results, "json"


def _cmd_bounds(args):
    g = _load_graph(args.source)
    report = bound_report(g)
    rows = [
        {
            "name": e.name,
            "value": e.value,
            "applicable": e.applicable,
            "certified": e.certified,
            "attained": e.attained,
            "note": e.note,
        }
        for e in report.entries
    ]
    if args.format == "csv":
        results = rows
    else:
        results = {"lambda2": report.lambda2, "bounds": rows}
    return {"source": args.source}, results, "json"


def _cmd_tree_split(args):
    g = _load_graph(args.source)
    split = find_splitting_vertex(g)
    results = {
        "vertex": split.vertex,
        "component_sizes": list(split.component_sizes),
        "spectral_bound": split_spectral_bound(g),
        "lambda2": algebraic_connectivity(g),
    }
    return {"source": args.source}, results, "json"


def _cmd_enumerate(args):
    if args.family == "trees":
        if args.n is None:
            raise ValueError("enumerate trees needs -n")
        fam = enumerate_trees(args.n, args.d if args.d is not None else args.n)
        params = {"family": "trees", "n": args.n, "d": args.d}
    elif args.family == "cubic":
        if args.n is None:
            raise ValueError("enumerate cubic needs -n")
        fam = enumerate_cubic(args.n)
        params = {"family": "cubic", "n": args.n}
    else:
        if args.n is None or args.m is None:
            raise ValueError("enumerate graphs needs -n and -m")
        fam = enumerate_graphs(args.n, args.m, args.min_degree)
        params = {
            "family": "graphs",
            "n": args.n,
            "m": args.m,
            "min_degree": args.min_degree,
        }
    if args.max_lambda2:
        outcome = maximize_lambda2(
            fam, threads=_threads(args), family_name=args.family
        )
        results = {
            "family": outcome.family,
            "enumerated": outcome.enumerated,
            "best_lambda2": outcome.best_lambda2,
            "maximizers": list(outcome.maximizers),
        }
        return params, results, "json"
    # plain stream: one graph6 line per graph, independent of --format
    for g in fam:
        print(graph6_encode(g))
    return params, None, "json"


def _cmd_verify(args):
    threads = _threads(args)
    if args.conjecture == "k2":
        rep = verify_conjecture_k2(
            args.n, samples=args.samples, seed=args.seed, threads=threads
        )
    elif args.conjecture == "tree2":
        exhaustive = True if args.exhaustive else None
        rep = verify_conjecture_tree2(
            args.d,
            args.K,
            exhaustive=exhaustive,
            samples=args.samples,
            seed=args.seed,
            threads=threads,
        )
    else:
        rep = verify_conjecture_cubic(args.K, threads=threads)
    results = {
        "name": rep.name,
        "params": rep.params,
        "exhaustive": rep.exhaustive,
        "checked": rep.checked,
        "passed": rep.passed,
        "detail": rep.detail,
        "witnesses": list(rep.witnesses),
    }
    if not rep.passed:
        code = 2
    elif rep.exhaustive:
        code = 0
    else:
        code = 3
    return _echo_params(args), results, "json", code


def _cmd_augment(args):
    trace = edge_augmentation(args.n, args.m)
    rows = [
        {"step": k + 1, "i": i, "j": j, "lambda2": val}
        for k, ((i, j), val) in enumerate(trace.steps)
    ]
    return {"n": args.n, "m": args.m}, rows, "csv"


def _cmd_compare(args):
    m_values = [int(tok) for tok in args.m_list.split(",") if tok]
    if not m_values:
        raise ValueError("--m-list needs at least one edge count")
    cmp = compare_families(args.n, m_values, threads=_threads(args))
    rows = [
        {
            "m": r.m,
            "augmented": r.augmented,
            "bipartite_b": r.bipartite_b,
            "bipartite": r.bipartite,
            "regular_d": r.regular_d,
            "regular_mean": r.regular_mean,
            "regular_min": r.regular_min,
            "regular_max": r.regular_max,
            "regular_reference": r.regular_reference,
            "note": r.note,
        }
        for r in cmp.rows
    ]
    return {"n": args.n, "m_list": m_values}, rows, "csv"


def _cmd_consensus(args):
    g = _load_graph(args.source)
    rng = np.random.default_rng(args.seed)
    u0 = rng.standard_normal(g.n)
    lam2 = algebraic_connectivity(g)
    t_end = args.t_end if args.t_end is not None else 10.0 / lam2
    from .graphs import max_degree

    dt = args.dt if args.dt is not None else 0.08 / (2.0 * max_degree(g))
    fit = consensus_decay_rate(g, u0, t_end, dt)
    results = {
        "lambda2": lam2,
        "rate": fit.rate,
        "rel_gap": abs(fit.rate - lam2) / lam2,
        "fit_rel_err": fit.rel_err,
        "t_end": t_end,
        "dt": dt,
    }
    params = {"source": args.source, "seed": args.seed}
    return params, results, "json"


# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="algconn",
        description="Algebraic connectivity: values, bounds, searches.",
        epilog=(
            "Graph sources: 'named:NAME' (one of: "
            + ", ".join(named_graph_names())
            + "), a file of graph6 lines, or a graph6 literal."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument(
            "--format", choices=("json", "csv"), default=None, help="output format"
        )
        p.add_argument(
            "--timing", action="store_true", help="include wall time in output"
        )
        p.add_argument("--threads", type=int, default=None, metavar="N")

    p = sub.add_parser("lambda2", help="algebraic connectivity of one graph")
    p.add_argument("source")
    p.add_argument("--vector", action="store_true", help="include Fiedler vector")
    common(p)
    p.set_defaults(func=_cmd_lambda2)

    p = sub.add_parser("bounds", help="all applicable bounds for one graph")
    p.add_argument("source")
    common(p)
    p.set_defaults(func=_cmd_bounds)

    p = sub.add_parser("tree-split", help="splitting vertex and split bound")
    p.add_argument("source")
    common(p)
    p.set_defaults(func=_cmd_tree_split)

    p = sub.add_parser("enumerate", help="stream a graph family as graph6")
    p.add_argument("family", choices=("trees", "cubic", "graphs"))
    p.add_argument("-n", type=int, default=None)
    p.add_argument("-d", type=int, default=None, help="max degree (trees)")
    p.add_argument("-m", type=int, default=None, help="edge count (graphs)")
    p.add_argument("--min-degree", type=int, default=0)
    p.add_argument(
        "--max-lambda2",
        action="store_true",
        help="report the maximizers instead of streaming",
    )
    common(p)
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("verify", help="check a conjecture on a finite family")
    p.add_argument("conjecture", choices=("k2", "tree2", "cubic"))
    p.add_argument("-n", type=int, default=8, help="vertex count (k2)")
    p.add_argument("-d", type=int, default=3, help="degree (tree2)")
    p.add_argument("-K", type=int, default=2, help="depth (tree2, cubic)")
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--exhaustive", action="store_true")
    common(p)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("augment", help="greedy spectral edge augmentation trace")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-m", type=int, required=True)
    common(p)
    p.set_defaults(func=_cmd_augment)

    p = sub.add_parser("compare", help="augmentation vs bipartite vs regular")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--m-list", required=True, help="comma-separated edge counts")
    common(p)
    p.set_defaults(func=_cmd_compare)

    p = sub.add_parser("consensus", help="simulated consensus decay vs lambda2")
    p.add_argument("source")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--t-end", type=float, default=None)
    p.add_argument("--dt", type=float, default=None)
    common(p)
    p.set_defaults(func=_cmd_consensus)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    start = time.perf_counter()
    try:
        out = args.func(args)
    except (GraphFormatError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ArithmeticError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    params, results, default_fmt = out[0], out[1], out[2]
    code = out[3] if len(out) > 3 else 0
    if results is not None:
        wall = time.perf_counter() - start if args.timing else None
        fmt = args.format or default_fmt
        _emit(args.command, params, results, fmt, wall)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
