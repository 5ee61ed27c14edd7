"""Command-line entry point: ``soapsteiner <command> ...``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from .catalog import empirical_length, empirical_length_p, generate_catalog
from .geometry import regular_polygon
from .relax import RelaxOptions, search_local_minima
from .render import RenderStyle, document, dumps, emit_svg, fmt, loads
from .spanning import spanning_catalog
from .topology import MAX_TERMINALS
from .triangulation import build_configuration, configuration_names

log = logging.getLogger("soapsteiner")


class UsageError(Exception):
    pass


def _write(path: Optional[str], text: str) -> None:
    if path:
        Path(path).write_text(text, encoding="utf-8")


def cmd_construct(args) -> int:
    tree = build_configuration(args.name)
    doc = document(tree, args.name)
    _write(args.json, dumps(doc))
    _write(args.svg, emit_svg(doc))
    print(fmt(tree.total_length))
    return 0


def cmd_relax(args) -> int:
    if not 3 <= args.n <= MAX_TERMINALS:
        raise UsageError(f"--n must be in [3, {MAX_TERMINALS}]")
    lo = args.steiner_min if args.steiner_min is not None else 0
    hi = args.steiner_max if args.steiner_max is not None else args.n - 2
    polygon = regular_polygon(args.n)
    trees, diag = search_local_minima(polygon, args.max_length, RelaxOptions(), steiner_range=(lo, hi),
                                      workers=args.workers)
    for tree in trees:
        print(f"{fmt(tree.total_length)}\tp={tree.p}\tq={tree.q}")
    if diag.unconverged:
        print(f"# {diag.unconverged} of {diag.topologies} topologies did not converge", file=sys.stderr)
    _write(args.json, dumps([document(t, f"relax-{args.n}-{i}") for i, t in enumerate(trees)]))
    return 0


def cmd_spanning(args) -> int:
    if not 3 <= args.n <= 9:
        raise UsageError("--n must be in [3, 9]")
    polygon = regular_polygon(args.n)
    groups = spanning_catalog(polygon, args.max_length)
    rows = [{"length": float(fmt(g.length)), "multiplicity": g.multiplicity, "q": g.q,
             "edges": [list(e) for e in g.representative.edges]} for g in groups]
    print(json.dumps(rows))
    _write(args.json, dumps([document(g.representative, f"spanning-{args.n}-{i}", polygon)
                             for i, g in enumerate(groups)]))
    return 0


def _catalog_rows(entries):
    for e in entries:
        m = e.matched_tree
        yield {
            "p": e.p, "n": e.n, "q": e.q, "expression": e.expression,
            "predicted_length": float(fmt(e.predicted_length)), "status": e.status,
            "matched": None if m is None else {"kind": m.kind, "p": m.p, "q": m.q, "length": float(fmt(m.length))},
            "note": e.note,
        }


def cmd_catalog(args) -> int:
    entries = generate_catalog(args.max_length, workers=args.workers)
    rows = list(_catalog_rows(entries))
    if args.format == "json":
        print(json.dumps(rows, indent=2))
        return 0
    print(f"{'p':>2} {'n':>2} {'q':>2}  {'expression':<12} {'length':>14}  {'status':<21} matched")
    for r in rows:
        m = r["matched"]
        found = "-" if m is None else f"{m['kind']} p={m['p']} q={m['q']}"
        print(f"{r['p']:>2} {r['n']:>2} {r['q']:>2}  {r['expression']:<12} {fmt(r['predicted_length']):>14}  "
              f"{r['status']:<21} {found}")
    return 0


def cmd_formula(args) -> int:
    if (args.n is None) == (args.p is None):
        raise UsageError("give exactly one of --n or --p")
    value = empirical_length(args.n, args.q) if args.n is not None else empirical_length_p(args.p, args.q)
    print(fmt(value))
    return 0


def cmd_render(args) -> int:
    doc = loads(Path(args.input).read_text(encoding="utf-8"))
    if isinstance(doc, list):
        if len(doc) != 1:
            raise UsageError("render takes a single tree document")
        doc = doc[0]
    Path(args.output).write_text(emit_svg(doc, RenderStyle()), encoding="utf-8")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="soapsteiner", description="Steiner and spanning trees on regular polygons.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log relaxation warnings")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build a named configuration from its triangle chain")
    p.add_argument("--name", required=True, choices=configuration_names())
    p.add_argument("--json")
    p.add_argument("--svg")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("relax", help="relax every topology on a regular n-gon")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--steiner-min", type=int)
    p.add_argument("--steiner-max", type=int)
    p.add_argument("--max-length", type=float, default=float("inf"))
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--json")
    p.set_defaults(func=cmd_relax)

    p = sub.add_parser("spanning", help="spanning trees of a regular n-gon up to a length")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--max-length", type=float, required=True)
    p.add_argument("--json")
    p.set_defaults(func=cmd_spanning)

    p = sub.add_parser("catalog", help="formula rows joined against the hexagon trees")
    p.add_argument("--max-length", type=float, required=True)
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("formula", help="evaluate the two-parameter length formula")
    p.add_argument("--n", type=int)
    p.add_argument("--p", type=int)
    p.add_argument("--q", type=int, required=True)
    p.set_defaults(func=cmd_formula)

    p = sub.add_parser("render", help="draw a tree document as SVG")
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True)
    p.set_defaults(func=cmd_render)
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.WARNING if args.verbose else logging.ERROR, format="%(levelname)s: %(message)s")
    if getattr(args, "workers", 1) < 1:
        parser.print_usage(sys.stderr)
        print("error: --workers must be positive", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())
