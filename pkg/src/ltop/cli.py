"""``ltop`` command line.

Every subcommand prints a JSON report on stdout and, when an output
directory is given (``--out`` or ``$LTOP_OUTPUT_DIR``), writes it to
``<dir>/<subcommand>.json``.  Failures print an error object on stderr and
exit with a code from :data:`EXIT_CODES`; nothing is written in that case.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import math
import os
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Sequence

from . import __version__
from .completion import (
    CompletionError,
    boundary_profile,
    floyd_lengths,
    lind_distances,
    lind_graph,
    nst_lengths,
    parse_decay,
)
from .cyclespace import CycleSpaceElement, CycleSpaceError, cycle_basis, geodetic_generate, thin_sum
from .generators import GeneratorError, LazyGraph, catalog_listing, parse_generator
from .graph import GraphError, WeightedGraph, build_graph, line_graph, to_json_dict
from .metric import MetricError, certified_lower_bound, dist, quotient
from .tours import TourError, euler_to_hamilton, euler_tour, hamilton_length, hamilton_verify, verify_euler

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_UNKNOWN_GENERATOR = 4
EXIT_INCONSISTENT = 5
EXIT_PRECONDITION = 6

EXIT_CODES = {
    "usage": EXIT_USAGE,
    "parse": EXIT_PARSE,
    "unknown-generator": EXIT_UNKNOWN_GENERATOR,
    "inconsistent-flags": EXIT_INCONSISTENT,
    "precondition": EXIT_PRECONDITION,
}

ENV_OUTPUT_DIR = "LTOP_OUTPUT_DIR"


class CliError(Exception):
    def __init__(self, kind: str, message: str):
        super().__init__(message)
        self.kind = kind


# -- value encoding ----------------------------------------------------------------


def num(x: Any) -> Any:
    """JSON-safe number: exact ints stay ints, fractions become floats, infinity becomes None."""
    if isinstance(x, bool) or x is None:
        return x
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else float(x)
    if isinstance(x, float) and math.isinf(x):
        return None
    return x


def exact(x: Any) -> str | None:
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, int) and not isinstance(x, bool):
        return str(x)
    return None


def number_block(x: Any) -> dict[str, Any]:
    out = {"value": num(x)}
    e = exact(x)
    if e is not None:
        out["exact"] = e
    if isinstance(x, float) and math.isinf(x):
        out["infinite"] = True
    return out


# -- inputs ------------------------------------------------------------------------


def load_graph(path: str) -> WeightedGraph:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise CliError("parse", f"cannot read {path}: {exc.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CliError("parse", f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None
    try:
        return build_graph(data, name=Path(path).stem)
    except (GraphError, TypeError, ValueError) as exc:
        raise CliError("parse", f"{path}: {exc}") from None


def load_generator(text: str) -> LazyGraph:
    try:
        return parse_generator(text)
    except GeneratorError as exc:
        raise CliError("unknown-generator", str(exc)) from None


def int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def fraction_list(text: str) -> list[Fraction]:
    try:
        return [Fraction(x.strip()) for x in text.split(",") if x.strip() and x.strip() != "..."]
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def fraction_arg(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def parse_point(g: WeightedGraph, text: str):
    """``v`` for a vertex, ``edge@offset`` for an interior point of an edge."""
    if text in g:
        return text
    if "@" in text:
        eid, _, off = text.rpartition("@")
        try:
            return (eid, Fraction(off))
        except (ValueError, ZeroDivisionError):
            pass
    raise CliError("precondition", f"{text!r} is neither a vertex nor edge@offset")


def source_graph(args) -> tuple[WeightedGraph | LazyGraph, str]:
    if args.graph and args.gen:
        raise CliError("inconsistent-flags", "give either --graph or --gen, not both")
    if args.graph:
        return load_graph(args.graph), "graph"
    if args.gen:
        return load_generator(args.gen), "gen"
    raise CliError("inconsistent-flags", "one of --graph or --gen is required")


def finite_graph(args) -> WeightedGraph:
    g, kind = source_graph(args)
    if kind == "graph":
        if getattr(args, "level", None) is not None:
            raise CliError("inconsistent-flags", "--level only applies to --gen")
        return g
    if args.level is None:
        raise CliError("inconsistent-flags", "--gen needs --level")
    return g.truncate(args.level).graph


# -- subcommands ---------------------------------------------------------------------


def cmd_gen_list(args) -> dict:
    return {"generators": catalog_listing()}


def cmd_dist(args) -> dict:
    g = finite_graph(args)
    x, y = parse_point(g, args.source), parse_point(g, args.target)
    r = dist(g, x, y, level=args.level)
    return {"distance": number_block(r.value), "reachable": r.reachable, "path": list(r.path), "level": r.level}


def cmd_quotient(args) -> dict:
    g, _ = source_graph(args)
    level = args.level if args.level is not None else 0
    q = quotient(g, level, args.tau, compare_level=args.compare_level)
    out = {
        "level": q.level,
        "tau": number_block(q.tau),
        "compare_level": q.compare_level,
        "classes": [{"members": list(c), "shrinking": s} for c, s in zip(q.classes, q.shrinking)],
    }
    if args.pair:
        x, y = args.pair
        out["pair"] = {"x": x, "y": y, "same_class": q.same_class(x, y),
                       "lower_bound": number_block(certified_lower_bound(g, x, y))}
    return out


def cmd_boundary(args) -> dict:
    g = load_generator(args.gen)
    if args.floyd:
        g = floyd_lengths(g, parse_decay(args.floyd), args.basepoint or g.truncate(0).graph.vertices[0])
    if args.depth <= max(args.levels):
        raise CliError("inconsistent-flags", f"--depth {args.depth} must exceed every level in --levels")
    bp = boundary_profile(g, args.levels, args.depth, args.eps, method=args.linkage)
    if args.csv:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["level", "eps", "cluster_count"])
        for level, eps, count in bp.rows():
            w.writerow([level, float(eps), count])
        args._extra_files[args.csv] = buf.getvalue()
    levels = []
    for lp in bp.levels:
        levels.append({
            "level": lp.level,
            "frontier": list(lp.frontier),
            "frontier_diameter": lp.diameter,
            "clusterings": [{
                "eps": number_block(c.eps),
                "count": c.count,
                "clusters": c.clusters(lp.frontier),
                "diameters": list(c.diameters),
                "separation": [list(r) for r in c.separation],
                "ends": [sorted(s) for s in lp.cluster_ends(c)],
            } for c in lp.clusterings],
        })
    return {"generator": bp.generator, "depth": bp.depth, "linkage": bp.linkage, "levels": levels}


def cmd_floyd(args) -> dict:
    g = load_generator(args.gen)
    fg = floyd_lengths(g, parse_decay(args.floyd), args.basepoint or g.truncate(0).graph.vertices[0])
    t = fg.truncate(args.level)
    hops = fg.hops(args.level + fg.lookahead)
    edges = []
    for e in t.graph.edges.values():
        edges.append({"id": e.id, "u": e.u, "v": e.v, "hop": min(hops[e.u], hops[e.v]), **_len(e.length)})
    return {"generator": fg.spec_string(), "level": args.level, "basepoint": fg.basepoint, "edges": edges,
            "unstable_hops": fg.unstable_hops(args.level, args.level + 2)}


def _len(x) -> dict:
    d = {"len": num(x)}
    if exact(x) is not None:
        d["len_exact"] = exact(x)
    return d


def cmd_nst(args) -> dict:
    g = load_graph(args.graph)
    root = args.root or g.vertices[0]
    r = nst_lengths(g, root)
    return {
        "root": root,
        "levels": dict(r.level),
        "tree_edges": sorted(r.tree_edges),
        "lengths": {eid: _len(x) for eid, x in sorted(r.lengths.items())},
        "graph": to_json_dict(r.graph),
    }


def cmd_lind(args) -> dict:
    try:
        data = json.loads(Path(args.metric).read_text())
    except OSError as exc:
        raise CliError("parse", f"cannot read {args.metric}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise CliError("parse", f"{args.metric}: invalid JSON ({exc.msg})") from None
    if not isinstance(data, dict) or "points" not in data or "metric" not in data:
        raise CliError("parse", f"{args.metric}: expected an object with 'points' and 'metric'")
    lg = lind_graph(data["points"], data["metric"])
    dd = lind_distances(lg, args.depth)
    pairs = []
    for (u, w), d in dd.items():
        target = lg.distance(u, w)
        pairs.append({"u": u, "w": w, "distance": number_block(d), "d_X": number_block(target),
                      "error": num(abs(d - target))})
    return {"depth": args.depth, "points": list(lg.points), "pairs": pairs}


def cmd_linegraph(args) -> dict:
    return {"graph": to_json_dict(line_graph(load_graph(args.graph)))}


def cmd_cyclebasis(args) -> dict:
    g = load_graph(args.graph)
    return {"dimension": len(g.edges) - len(g.vertices) + len(g.components()),
            "basis": [{"edges": b.sorted_edges(), **_len(b.length)} for b in cycle_basis(g)]}


def cmd_geodetic(args) -> dict:
    g = load_graph(args.graph)
    if args.element:
        elements = [CycleSpaceElement.of(g, [e.strip() for e in args.element.split(",") if e.strip()])]
    else:
        elements = cycle_basis(g)
    out = []
    for z in elements:
        r = geodetic_generate(g, z)
        check = thin_sum(r.family).element.edges == z.edges
        out.append({
            "element": z.sorted_edges(),
            "family": [{"edges": sorted(c), **_len(x)} for c, x in zip(r.family.circuits, r.family.lengths)],
            "sum_matches": check,
            "splits": len(r.trace),
        })
    return {"results": out}


def cmd_euler(args) -> dict:
    g = load_graph(args.graph)
    t = euler_tour(g)
    out = {"tour": t.to_json(), "valid": verify_euler(g, t).ok}
    if args.log:
        out["log"] = [{"step": s.step, "at": s.at, "circuit": list(s.circuit), "position": s.position} for s in t.log]
    return out


def cmd_hamilton(args) -> dict:
    g = load_graph(args.graph)
    t = euler_tour(g)
    h = euler_to_hamilton(g, t)
    L = line_graph(g)
    v = hamilton_verify(L, h)
    return {"euler": t.to_json(), "hamilton": h.to_json(), "line_edges": list(h.line_edges),
            "valid": v.ok, "violation": v.violation,
            "cycle_length": number_block(hamilton_length(L, h)), "total_length": number_block(g.total_length())}


# -- parser ------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # route usage errors through the JSON error path
        raise CliError("usage", f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="ltop", description="Length-metric tools for weighted graphs and their exhaustions.")
    p.add_argument("--version", action="version", version=f"ltop {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help=f"directory for report files (default ${ENV_OUTPUT_DIR})")
    common.add_argument("--seed", type=int, default=0, help="recorded in the report (default 0)")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func: Callable, help: str):
        sp = sub.add_parser(name, parents=[common], help=help, description=help)
        sp.set_defaults(func=func)
        return sp

    add("gen-list", cmd_gen_list, "list the generator catalog")

    sp = add("dist", cmd_dist, "exact distance between two points")
    sp.add_argument("--graph")
    sp.add_argument("--gen")
    sp.add_argument("--level", type=int)
    sp.add_argument("--from", dest="source", required=True, help="vertex or edge@offset")
    sp.add_argument("--to", dest="target", required=True, help="vertex or edge@offset")

    sp = add("quotient", cmd_quotient, "classes of vertices within tau of each other")
    sp.add_argument("--graph")
    sp.add_argument("--gen")
    sp.add_argument("--level", type=int)
    sp.add_argument("--tau", type=fraction_arg, required=True)
    sp.add_argument("--compare-level", type=int)
    sp.add_argument("--pair", nargs=2, metavar=("X", "Y"))

    sp = add("boundary", cmd_boundary, "frontier clusterings approximating the boundary")
    sp.add_argument("--gen", required=True)
    sp.add_argument("--floyd", help="decay: pow2, pow4, const or exp:<rate> (optionally f=...)")
    sp.add_argument("--basepoint")
    sp.add_argument("--levels", type=int_list, required=True)
    sp.add_argument("--depth", type=int, required=True)
    sp.add_argument("--eps", type=fraction_list, default=[Fraction(1, 2**k) for k in range(1, 11)])
    sp.add_argument("--linkage", choices=["complete", "single"], default="complete")
    sp.add_argument("--csv", help="CSV file name (relative to the output directory unless absolute)")

    sp = add("floyd", cmd_floyd, "Floyd lengths on a truncation")
    sp.add_argument("--gen", required=True)
    sp.add_argument("--floyd", required=True)
    sp.add_argument("--basepoint")
    sp.add_argument("--level", type=int, required=True)

    sp = add("nst", cmd_nst, "lengths from a depth-first normal spanning tree")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--root")

    sp = add("lind", cmd_lind, "graph realizing a finite metric sample as its boundary")
    sp.add_argument("--metric", required=True, help='JSON {"points": [...], "metric": [[...]]}')
    sp.add_argument("--depth", type=int, required=True)

    sp = add("cyclebasis", cmd_cyclebasis, "fundamental cycle basis")
    sp.add_argument("--graph", required=True)

    sp = add("geodetic", cmd_geodetic, "write cycle-space elements as sums of geodetic cycles")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--element", help="comma-separated edge ids (default: every basis element)")

    sp = add("euler", cmd_euler, "Euler tour by circuit insertion")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--log", action="store_true")

    sp = add("hamilton-from-euler", cmd_hamilton, "Hamilton cycle of the line graph from an Euler tour")
    sp.add_argument("--graph", required=True)

    sp = add("linegraph", cmd_linegraph, "line graph with averaged lengths")
    sp.add_argument("--graph", required=True)
    return p


_NON_CONFIG = {"out", "func", "_extra_files"}


def config_of(args) -> dict:
    cfg = {}
    for k, v in sorted(vars(args).items()):
        if k in _NON_CONFIG:
            continue
        if isinstance(v, list):
            v = [str(x) if isinstance(x, Fraction) else x for x in v]
        elif isinstance(v, Fraction):
            v = str(v)
        cfg[k] = v
    return cfg


def make_report(args, results: dict) -> dict:
    cfg = config_of(args)
    digest = hashlib.sha256(json.dumps(cfg, sort_keys=True).encode()).hexdigest()
    return {
        "command": args.command,
        "inputs": cfg,
        "results": results,
        "provenance": {"tool": "ltop", "version": __version__, "config_hash": digest},
        "seed": args.seed,
    }


def _fail(kind: str, message: str) -> int:
    sys.stderr.write(json.dumps({"error": kind, "message": message, "exit_code": EXIT_CODES[kind]}) + "\n")
    return EXIT_CODES[kind]


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        args._extra_files = {}
        if getattr(args, "level", None) is not None and args.level < 0:
            raise CliError("inconsistent-flags", "--level must be >= 0")
        results = args.func(args)
    except CliError as exc:
        return _fail(exc.kind, str(exc))
    except GeneratorError as exc:
        return _fail("unknown-generator", str(exc))
    except GraphError as exc:
        return _fail("precondition", str(exc))
    except (MetricError, CompletionError, CycleSpaceError, TourError, KeyError) as exc:
        msg = exc.args[0] if exc.args else type(exc).__name__
        return _fail("precondition", str(msg))
    report = make_report(args, results)
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    out_dir = args.out or os.environ.get(ENV_OUTPUT_DIR)
    if out_dir:
        d = Path(out_dir)
        d.mkdir(parents=True, exist_ok=True)
        (d / f"{args.command}.json").write_text(text)
    for name, content in args._extra_files.items():
        target = Path(name)
        if not target.is_absolute() and out_dir:
            target = Path(out_dir) / target
        target.write_text(content)
    sys.stdout.write(text)
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
