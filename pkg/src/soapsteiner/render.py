"""Tree exchange documents (JSON) and line-drawing output (SVG)."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Union

from .geometry import TerminalSet, dist
from .relax import GeometricTree, segments_symmetry
from .spanning import SpanningTree

JSON_DIGITS = 15
FIELDS = ("name", "terminals", "steiner_points", "edges", "length", "p", "q", "stable")


def sig(x: float, digits: int = JSON_DIGITS) -> float:
    """Round to ``digits`` significant digits; negative zero becomes zero."""
    v = float(f"{x:.{digits}g}")
    return 0.0 if v == 0 else v


def fmt(x: float, decimals: int = 12) -> str:
    """Console number format: fixed, twelve places after the point."""
    return f"{x:.{decimals}f}"


@dataclass(frozen=True)
class TreeDocument:
    name: str
    terminals: tuple[tuple[float, float], ...]
    steiner_points: tuple[tuple[float, float], ...]
    edges: tuple[tuple[int, int], ...]
    length: float
    p: int
    q: int
    stable: bool

    def __post_init__(self):
        nv = len(self.terminals) + len(self.steiner_points)
        if len(self.edges) != nv - 1:
            raise ValueError("a tree on V vertices has V - 1 edges")
        parent = list(range(nv))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for i, j in self.edges:
            if not (0 <= i < nv and 0 <= j < nv) or i == j:
                raise ValueError(f"edge ({i}, {j}) out of range")
            ri, rj = find(i), find(j)
            if ri == rj:
                raise ValueError("edges contain a cycle")
            parent[ri] = rj
        if abs(self.edge_sum() - self.length) > 1e-9:
            raise ValueError("length does not match the coordinates")

    def points(self):
        return list(self.terminals) + list(self.steiner_points)

    def edge_sum(self) -> float:
        pts = self.points()
        return math.fsum(dist(pts[i], pts[j]) for i, j in self.edges)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "terminals": [[sig(x), sig(y)] for x, y in self.terminals],
            "steiner_points": [[sig(x), sig(y)] for x, y in self.steiner_points],
            "edges": [[i, j] for i, j in self.edges],
            "length": sig(self.length),
            "p": self.p,
            "q": self.q,
            "stable": self.stable,
        }

    @classmethod
    def from_dict(cls, d: dict) -> TreeDocument:
        missing = [k for k in FIELDS if k not in d]
        if missing:
            raise ValueError(f"missing fields: {', '.join(missing)}")
        return cls(
            str(d["name"]),
            tuple((float(x), float(y)) for x, y in d["terminals"]),
            tuple((float(x), float(y)) for x, y in d["steiner_points"]),
            tuple((int(i), int(j)) for i, j in d["edges"]),
            float(d["length"]),
            int(d["p"]),
            int(d["q"]),
            bool(d["stable"]),
        )


def dumps(doc_or_docs) -> str:
    if isinstance(doc_or_docs, TreeDocument):
        payload = doc_or_docs.to_dict()
    else:
        payload = [d.to_dict() for d in doc_or_docs]
    return json.dumps(payload, indent=2) + "\n"


def loads(text: str):
    data = json.loads(text)
    if isinstance(data, list):
        return [TreeDocument.from_dict(d) for d in data]
    return TreeDocument.from_dict(data)


def document(tree: Union[GeometricTree, SpanningTree], name: str, terminals: TerminalSet = None) -> TreeDocument:
    """Snapshot a tree. Spanning trees need their terminal set and carry no stability claim."""
    if isinstance(tree, GeometricTree):
        edges = tuple(sorted(tree.topology.edges))
        return TreeDocument(name, tuple(tree.terminals.coords), tuple(s.as_tuple() for s in tree.steiner_points),
                            edges, tree.total_length, tree.p, tree.q, tree.stable)
    if terminals is None:
        raise ValueError("a spanning tree needs its terminal set")
    q = segments_symmetry(tree.segments(terminals), tuple(terminals.center), terminals.symmetry_order)
    return TreeDocument(name, tuple(terminals.coords), (), tuple(tree.edges), tree.total_length, 0, q, False)


@dataclass(frozen=True)
class RenderStyle:
    stroke_width: float = 0.01
    terminal_radius: float = 0.03
    steiner_radius: float = 0.015
    margin: float = 0.05

    def __post_init__(self):
        if min(self.stroke_width, self.terminal_radius, self.steiner_radius, self.margin) <= 0:
            raise ValueError("style values must be positive")


def _n(x: float) -> str:
    s = f"{x:.6f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def emit_svg(doc: TreeDocument, style: RenderStyle = RenderStyle()) -> str:
    """Standalone SVG: edges first (sorted), then terminals, then Steiner points, by index.

    The y axis is flipped so the drawing keeps the mathematical orientation.
    """
    pts = [(x, -y) for x, y in doc.points()]
    xs, ys = [p[0] for p in pts], [p[1] for p in pts]
    w, h = max(xs) - min(xs), max(ys) - min(ys)
    pad = style.margin * max(w, h, 1e-9) + style.terminal_radius
    x0, y0 = min(xs) - pad, min(ys) - pad
    vw, vh = w + 2 * pad, h + 2 * pad
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="{_n(x0)} {_n(y0)} {_n(vw)} {_n(vh)}">',
        f"  <title>{doc.name} L={fmt(doc.length)} p={doc.p} q={doc.q}</title>",
        f'  <g stroke="black" stroke-width="{_n(style.stroke_width)}" stroke-linecap="round">',
    ]
    for i, j in sorted(tuple(sorted(e)) for e in doc.edges):
        (ax, ay), (bx, by) = pts[i], pts[j]
        out.append(f'    <line x1="{_n(ax)}" y1="{_n(ay)}" x2="{_n(bx)}" y2="{_n(by)}"/>')
    out.append("  </g>")
    t = len(doc.terminals)
    for x, y in pts[:t]:
        out.append(f'  <circle class="terminal" cx="{_n(x)}" cy="{_n(y)}" r="{_n(style.terminal_radius)}" fill="black"/>')
    for x, y in pts[t:]:
        out.append(f'  <circle class="steiner" cx="{_n(x)}" cy="{_n(y)}" r="{_n(style.steiner_radius)}" '
                   f'fill="none" stroke="black" stroke-width="{_n(style.stroke_width / 2)}"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
