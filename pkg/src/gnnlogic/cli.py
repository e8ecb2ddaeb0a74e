"""Command-line entry point.

Exit codes: 0 success or a true verdict, 1 a false verdict (or fuzz
failures), 2 usage or input errors.  Errors are reported as JSON on stderr.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .charform import char_formula
from .compiler import COMPILERS
from .fuzz import FAMILIES, SUITES, FuzzConfig, run_differential
from .games import DECIDERS
from .gnn import FORMAT_VERSION, gnn_to_dict, measure_spectrum, parse_gnn, run_levels
from .gnn.serialize import encode_rational
from .graph import PointedGraph, canonical_json, parse_graph
from .logic import holds, parse_formula, print_formula

# Bounds beyond this many bits are written as null, with their bit length.
BOUND_DIGITS_BITS = 256


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _emit(obj, stream=None):
    out = {"format_version": FORMAT_VERSION}
    out.update(obj)
    (stream or sys.stdout).write(canonical_json(out) + "\n")


def _read_graph(path):
    return parse_graph(Path(path).read_bytes())


def _cmd_compile(args):
    art = COMPILERS[args.fragment](parse_formula(args.formula), args.dim)
    gnn_json = canonical_json(gnn_to_dict(art.classifier)) + "\n"
    columns = {"format_version": FORMAT_VERSION, "formula": print_formula(art.order[-1]),
               "columns": {str(i): text for i, text in enumerate(art.columns())}}
    if args.out:
        out = Path(args.out)
        out.write_text(gnn_json)
        side = Path(args.columns) if args.columns else out.with_suffix(".columns.json")
        side.write_text(canonical_json(columns) + "\n")
    else:
        sys.stdout.write(gnn_json)
        if args.columns:
            Path(args.columns).write_text(canonical_json(columns) + "\n")
    return 0


def _cmd_eval_formula(args):
    g = _read_graph(args.graph)
    value = holds(parse_formula(args.formula), PointedGraph(g, args.node))
    _emit({"node": args.node, "value": value})
    return 0 if value else 1


def _cmd_eval_gnn(args):
    n = parse_gnn(Path(args.gnn).read_bytes())
    g = _read_graph(args.graph)
    state = run_levels(n, g)[-1][g.index(args.node)]
    value = n.cls(state)
    _emit({"node": args.node, "state": [encode_rational(x) for x in state], "value": value})
    return 0 if value else 1


def _cmd_equiv(args):
    pg1 = PointedGraph(_read_graph(args.g1), args.v1)
    pg2 = PointedGraph(_read_graph(args.g2), args.v2)
    report = DECIDERS[args.kind](pg1, pg2, args.rounds, args.grade)
    _emit(report.to_dict())
    return 0 if report.verdict else 1


def _cmd_charform(args):
    pg = PointedGraph(_read_graph(args.g), args.v)
    cf = char_formula(pg, args.rounds, args.grade, args.variant)
    sys.stdout.write(print_formula(cf.formula) + "\n")
    return 0


def _bound(b):
    if b is None or b.bit_length() > BOUND_DIGITS_BITS:
        return None
    return b


def _cmd_spectrum(args):
    n = parse_gnn(Path(args.gnn).read_bytes())
    rep = measure_spectrum(n, [_read_graph(p) for p in args.graphs])
    bounds = rep.bounds
    _emit({
        "sizes": rep.sizes(),
        "bounds": None if bounds is None else [_bound(b) for b in bounds],
        "bound_bits": None if bounds is None else [None if b is None else b.bit_length()
                                                  for b in bounds],
        "within_bounds": rep.within_bounds(),
        "level0": sorted([list(map(encode_rational, v)) for v in rep.levels[0]]),
    })
    return 0 if rep.within_bounds() else 1


def _cmd_fuzz(args):
    cfg = FuzzConfig(seed=args.seed, trials=args.trials, max_nodes=args.max_nodes, dim=args.dim,
                     depth=args.depth, grade=args.grade, edge_prob=Fraction(args.edge_prob),
                     family=args.family)
    report = run_differential(args.suite, cfg)
    _emit(report)
    return 0 if report["failures"] == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="gnnlogic", description="Exact logic, games and bounded GNN tooling.")
    p.add_argument("--version", action="store_true", help="print toolkit and format versions")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    c = sub.add_parser("compile", help="compile a formula into a GNN classifier")
    c.add_argument("--fragment", required=True, choices=sorted(COMPILERS))
    c.add_argument("--formula", required=True)
    c.add_argument("--dim", type=int)
    c.add_argument("--out", help="GNN JSON path (stdout if omitted)")
    c.add_argument("--columns", help="sidecar path (default: <out>.columns.json)")
    c.set_defaults(func=_cmd_compile)

    c = sub.add_parser("eval-formula", help="evaluate a formula at a node")
    c.add_argument("--formula", required=True)
    c.add_argument("--graph", required=True)
    c.add_argument("--node", required=True)
    c.set_defaults(func=_cmd_eval_formula)

    c = sub.add_parser("eval-gnn", help="run a GNN classifier at a node")
    c.add_argument("--gnn", required=True)
    c.add_argument("--graph", required=True)
    c.add_argument("--node", required=True)
    c.set_defaults(func=_cmd_eval_gnn)

    c = sub.add_parser("equiv", help="decide game equivalence of two pointed graphs")
    c.add_argument("--kind", required=True, choices=sorted(DECIDERS))
    c.add_argument("--rounds", required=True, type=int)
    c.add_argument("--grade", required=True, type=int)
    for name in ("g1", "v1", "g2", "v2"):
        c.add_argument(name)
    c.set_defaults(func=_cmd_equiv)

    c = sub.add_parser("charform", help="print a characteristic formula")
    c.add_argument("--variant", required=True, choices=["local", "global"])
    c.add_argument("--rounds", required=True, type=int)
    c.add_argument("--grade", required=True, type=int)
    c.add_argument("g")
    c.add_argument("v")
    c.set_defaults(func=_cmd_charform)

    c = sub.add_parser("spectrum", help="observed per-level state sets against the bound")
    c.add_argument("--gnn", required=True)
    c.add_argument("--graphs", required=True, nargs="+")
    c.set_defaults(func=_cmd_spectrum)

    c = sub.add_parser("fuzz", help="run a differential test suite")
    c.add_argument("--suite", required=True, choices=SUITES)
    c.add_argument("--trials", required=True, type=int)
    c.add_argument("--seed", required=True, type=int)
    c.add_argument("--family", default="AC", choices=FAMILIES)
    c.add_argument("--depth", type=int, default=2)
    c.add_argument("--grade", type=int, default=2)
    c.add_argument("--dim", type=int, default=2)
    c.add_argument("--max-nodes", type=int, default=6)
    c.add_argument("--edge-prob", default="1/2")
    c.set_defaults(func=_cmd_fuzz)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.version:
            _emit({"version": __version__})
            return 0
        if args.command is None:
            raise UsageError("a subcommand is required")
        return args.func(args)
    except UsageError as e:
        _emit({"error": "usage", "message": str(e)}, sys.stderr)
    except (ValueError, OSError, ZeroDivisionError) as e:
        _emit({"error": type(e).__name__, "message": str(e)}, sys.stderr)
    except Exception as e:  # keep the exit-code contract even for bugs
        _emit({"error": "internal", "type": type(e).__name__, "message": str(e)}, sys.stderr)
    return 2


if __name__ == "__main__":
    sys.exit(main())
