"""Triangle-chain construction of Steiner trees.

A chain is a set of triangles whose vertices are terminals or link points. Each
triangle gets its own three-pin tree; trees are glued where triangles share a
link point. A link shared by two triangles is a point the film passes straight
through, so the two stems must leave it in opposite directions. A link shared by
three triangles becomes a Steiner vertex. Free link points slide along a
diagonal until the stem elevations on both sides agree.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Optional

from scipy.optimize import bisect

from .geometry import (
    TWO_THIRDS_PI,
    Point2,
    TerminalSet,
    Triangle,
    cross,
    dist,
    fermat_xy,
    regular_polygon,
    similar_same_chirality,
    stem_elevation,
    steiner_3_length,
    vertex_angle,
)
from .relax import GeometricTree, tree_from_positions
from .topology import SteinerTopology

BISECT_XTOL = 1e-13
LINK_TOL = 1e-9
SWEEP_LIMIT = 200


class UnsolvableChain(ValueError):
    """The elevation mismatch at a link keeps one sign over the whole bracket."""


@dataclass(frozen=True)
class LinkPoint:
    """A point on the segment between two terminals.

    ``x`` fixes the distance from ``diagonal[0]``. ``through`` names two points whose
    line cuts the diagonal at the link. With neither, the link is free and gets solved.
    """

    name: str
    diagonal: tuple[str, str]
    x: Optional[float] = None
    through: Optional[tuple[str, str]] = None
    bracket: Optional[tuple[float, float]] = None

    @property
    def free(self) -> bool:
        return self.x is None and self.through is None


@dataclass(frozen=True)
class TriangleChainSpec:
    terminals: TerminalSet
    triangles: tuple[tuple[str, str, str], ...]
    link_points: tuple[LinkPoint, ...] = ()
    trivial_extensions: tuple[tuple[str, str], ...] = ()
    # Links whose adjacent triangles are meant to be similar with equal handedness.
    similar_at: tuple[str, ...] = ()

    def __post_init__(self):
        labels = set(self.terminals.labels)
        names = [lp.name for lp in self.link_points]
        if len(set(names)) != len(names) or labels & set(names):
            raise ValueError("link names must be unique and differ from terminal labels")
        known = labels | set(names)
        for tri in self.triangles:
            if len(set(tri)) != 3 or not set(tri) <= known:
                raise ValueError(f"bad triangle {tri}")
        for lp in self.link_points:
            if not set(lp.diagonal) <= labels:
                raise ValueError(f"link {lp.name} must sit on a terminal-terminal diagonal")

    def link(self, name: str) -> LinkPoint:
        for lp in self.link_points:
            if lp.name == name:
                return lp
        raise KeyError(name)

    def triangles_at(self, name: str) -> list[tuple[str, str, str]]:
        return [tri for tri in self.triangles if name in tri]


@dataclass(frozen=True)
class NamedConfiguration:
    name: str
    exact_length: float
    p: int
    q: int
    expression: str
    chain: TriangleChainSpec = field(repr=False)
    # False when no closed form is known and the length comes from the chain itself.
    exact: bool = True

    def __post_init__(self):
        if not self.exact_length > 0:
            raise ValueError("exact_length must be positive")


def _line_intersection(p1, p2, p3, p4):
    d = (p1[0] - p2[0]) * (p3[1] - p4[1]) - (p1[1] - p2[1]) * (p3[0] - p4[0])
    if abs(d) < 1e-15:
        raise ValueError("lines are parallel")
    a = p1[0] * p2[1] - p1[1] * p2[0]
    b = p3[0] * p4[1] - p3[1] * p4[0]
    return ((a * (p3[0] - p4[0]) - (p1[0] - p2[0]) * b) / d, (a * (p3[1] - p4[1]) - (p1[1] - p2[1]) * b) / d)


def _along(p, q, x):
    n = dist(p, q)
    return (p[0] + (q[0] - p[0]) * x / n, p[1] + (q[1] - p[1]) * x / n)


class _Layout:
    """Resolves point names to coordinates for a given assignment of free link parameters."""

    def __init__(self, chain: TriangleChainSpec, params: dict[str, float]):
        self.chain = chain
        self.params = params
        self._cache: dict[str, tuple[float, float]] = {}
        labels = chain.terminals.labels
        for lab, xy in zip(labels, chain.terminals.coords):
            self._cache[lab] = xy
        self._resolving: set[str] = set()

    def __getitem__(self, name: str) -> tuple[float, float]:
        if name in self._cache:
            return self._cache[name]
        if name in self._resolving:
            raise ValueError(f"cyclic link definition at {name}")
        self._resolving.add(name)
        lp = self.chain.link(name)
        p, q = self[lp.diagonal[0]], self[lp.diagonal[1]]
        if lp.through is not None:
            xy = _line_intersection(p, q, self[lp.through[0]], self[lp.through[1]])
        else:
            x = lp.x if lp.x is not None else self.params[name]
            xy = _along(p, q, x)
        self._resolving.discard(name)
        self._cache[name] = xy
        return xy

    def parameter(self, name: str) -> float:
        lp = self.chain.link(name)
        return dist(self[lp.diagonal[0]], self[name])


def _stem_heading(layout: _Layout, tri, at: str, diagonal) -> float:
    """Absolute direction of the stem leaving ``at`` in ``tri``, from the elevation formula."""
    others = [v for v in tri if v != at]
    # Measure from the side lying on the link's diagonal when there is one.
    on_line = [v for v in others if v in diagonal or _collinear(layout, at, v, diagonal)]
    ref = on_line[0] if on_line else others[0]
    far = others[1] if ref == others[0] else others[0]
    P, Q, R = layout[at], layout[ref], layout[far]
    alpha = stem_elevation(dist(P, Q), dist(P, R), vertex_angle(P, Q, R))
    base = math.atan2(Q[1] - P[1], Q[0] - P[0])
    return base + alpha if cross(P, Q, R) > 0 else base - alpha


def _collinear(layout, at, v, diagonal) -> bool:
    a, b = layout[diagonal[0]], layout[diagonal[1]]
    return abs(cross(a, b, layout[v])) <= 1e-12 * max(1.0, dist(a, b) ** 2)


def _wrap(theta: float) -> float:
    return math.atan2(math.sin(theta), math.cos(theta))


def link_residual(chain: TriangleChainSpec, name: str, params: dict[str, float]) -> float:
    """Signed mismatch (radians) between the two stems through a pass-through link."""
    tris = chain.triangles_at(name)
    if len(tris) != 2:
        raise ValueError(f"link {name} is shared by {len(tris)} triangles, not 2")
    layout = _Layout(chain, params)
    diag = chain.link(name).diagonal
    h1 = _stem_heading(layout, tris[0], name, diag)
    h2 = _stem_heading(layout, tris[1], name, diag)
    return _wrap(h1 - h2 - math.pi)


def _default_bracket(chain: TriangleChainSpec, name: str) -> tuple[float, float]:
    lp = chain.link(name)
    if lp.bracket is not None:
        return lp.bracket
    coords = dict(zip(chain.terminals.labels, chain.terminals.coords))
    n = dist(coords[lp.diagonal[0]], coords[lp.diagonal[1]])
    return (1e-6 * n, (1 - 1e-6) * n)


def solve_partition(chain: TriangleChainSpec, link: str, bracket: Optional[tuple[float, float]] = None,
                    params: Optional[dict[str, float]] = None) -> float:
    """Distance along the link's diagonal at which both stems through ``link`` line up.

    Other free links keep the values in ``params`` (their bracket midpoints by default).
    """
    lp = chain.link(link)
    if not lp.free:
        raise ValueError(f"link {link} is not free")
    params = dict(params or {})
    for other in chain.link_points:
        if other.free and other.name not in params:
            params[other.name] = sum(_default_bracket(chain, other.name)) / 2
    lo, hi = bracket if bracket is not None else _default_bracket(chain, link)

    def f(x):
        params[link] = x
        return link_residual(chain, link, params)

    try:
        flo, fhi = f(lo), f(hi)
    except ValueError as exc:
        raise UnsolvableChain(f"elevation undefined at the bracket ends for {link}: {exc}") from exc
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if (flo > 0) == (fhi > 0):
        raise UnsolvableChain(f"no sign change of the elevation mismatch at {link} on [{lo}, {hi}]")
    return bisect(f, lo, hi, xtol=BISECT_XTOL, rtol=8.9e-16, maxiter=400)


def solve_links(chain: TriangleChainSpec) -> dict[str, float]:
    """Solve every free link; coupled links are swept until no parameter moves."""
    free = [lp.name for lp in chain.link_points if lp.free]
    params = {name: sum(_default_bracket(chain, name)) / 2 for name in free}
    for _ in range(SWEEP_LIMIT):
        moved = 0.0
        for name in free:
            x = solve_partition(chain, name, params=params)
            moved = max(moved, abs(x - params[name]))
            params[name] = x
        if moved < BISECT_XTOL or len(free) <= 1:
            break
    return params


@dataclass
class ChainParts:
    """Intermediate result of gluing per-triangle trees."""

    points: dict[str, tuple[float, float]]
    fermat: list[tuple[tuple[float, float], Optional[str]]]
    triangle_lengths: list[float]


def _triangle_pieces(chain: TriangleChainSpec, layout: _Layout) -> ChainParts:
    fermat, lengths = [], []
    for tri in chain.triangles:
        a, b, c = (layout[v] for v in tri)
        xy, k = fermat_xy(a, b, c)
        fermat.append((xy, None if k is None else tri[k]))
        lengths.append(steiner_3_length(dist(b, c), dist(a, b), vertex_angle(b, a, c)))
    names = set(chain.terminals.labels) | {lp.name for lp in chain.link_points}
    return ChainParts({n: layout[n] for n in names}, fermat, lengths)


def chain_length(chain: TriangleChainSpec, params: Optional[dict[str, float]] = None) -> float:
    """Sum of the three-pin lengths of every triangle plus the trivial extension stems."""
    params = solve_links(chain) if params is None else params
    layout = _Layout(chain, params)
    parts = _triangle_pieces(chain, layout)
    ext = [dist(layout[u], layout[v]) for u, v in chain.trivial_extensions]
    return math.fsum(parts.triangle_lengths + ext)


def assemble(chain: TriangleChainSpec, params: Optional[dict[str, float]] = None) -> GeometricTree:
    """Glue the per-triangle trees into one embedded tree over the terminals."""
    params = solve_links(chain) if params is None else params
    layout = _Layout(chain, params)
    parts = _triangle_pieces(chain, layout)
    labels = chain.terminals.labels
    t = len(labels)
    index = {lab: i for i, lab in enumerate(labels)}
    steiner_xy: list[tuple[float, float]] = []

    # One node per triangle: its Steiner point, or the vertex it degenerates onto.
    tri_node = []
    for (xy, degenerate_at) in parts.fermat:
        if degenerate_at is None:
            tri_node.append(("S", len(steiner_xy)))
            steiner_xy.append(xy)
        else:
            tri_node.append(("V", degenerate_at))

    # Links shared by three triangles become Steiner vertices.
    junction = {}
    for lp in chain.link_points:
        if len(chain.triangles_at(lp.name)) == 3:
            junction[lp.name] = len(steiner_xy)
            steiner_xy.append(layout[lp.name])

    def vid(node):
        kind, ref = node
        if kind == "S":
            return t + ref
        if ref in index:
            return index[ref]
        if ref in junction:
            return t + junction[ref]
        raise ValueError(f"triangle degenerates onto pass-through link {ref}")

    edges = set()
    pending: dict[str, list[int]] = {}
    for tri, node in zip(chain.triangles, tri_node):
        me = vid(node)
        for v in tri:
            if node == ("V", v):
                continue
            if v in index:
                other = index[v]
            elif v in junction:
                other = t + junction[v]
            else:
                pending.setdefault(v, []).append(me)
                continue
            if other != me:
                edges.add((min(me, other), max(me, other)))
    for name, ends in pending.items():
        if len(ends) != 2:
            raise ValueError(f"pass-through link {name} joins {len(ends)} stems")
        u, v = ends
        edges.add((min(u, v), max(u, v)))
    for u, v in chain.trivial_extensions:
        a, b = index[u], index[v]
        edges.add((min(a, b), max(a, b)))
    topology = SteinerTopology(t, len(steiner_xy), tuple(sorted(edges)))
    return tree_from_positions(chain.terminals, topology, steiner_xy)


@dataclass
class ChainReport:
    ok: bool
    violations: list[str]
    link_angles: dict[str, float]
    scales: dict[str, Optional[float]]


def validate_chain(chain: TriangleChainSpec, params: Optional[dict[str, float]] = None,
                   tol: float = LINK_TOL) -> ChainReport:
    """Check similarity at declared links, straight pass-through films and 120-degree junctions."""
    violations: list[str] = []
    angles: dict[str, float] = {}
    scales: dict[str, Optional[float]] = {}
    try:
        params = solve_links(chain) if params is None else params
    except UnsolvableChain as exc:
        return ChainReport(False, [f"unsolvable: {exc}"], angles, scales)
    layout = _Layout(chain, params)
    parts = _triangle_pieces(chain, layout)
    fermat = {tri: xy for tri, (xy, _) in zip(chain.triangles, parts.fermat)}

    for a, b in _pairs(chain.triangles):
        shared = set(a) & set(b)
        if len(shared) > 1 or _interiors_overlap([layout[v] for v in a], [layout[v] for v in b]):
            violations.append(f"triangles {''.join(a)} and {''.join(b)} overlap")

    for lp in chain.link_points:
        name = lp.name
        tris = chain.triangles_at(name)
        xy = layout[name]
        p, q = layout[lp.diagonal[0]], layout[lp.diagonal[1]]
        if abs(cross(p, q, xy)) > tol * dist(p, q) or not (-tol <= _proj(p, q, xy) <= dist(p, q) + tol):
            violations.append(f"link {name} is off its diagonal")
        if name in chain.similar_at:
            if len(tris) != 2:
                violations.append(f"similarity declared at {name} but {len(tris)} triangles meet there")
            else:
                scale = _similar_at(layout, tris[0], tris[1], name, tol)
                scales[name] = scale
                if scale is None:
                    violations.append(f"triangles at {name} are not similar with equal handedness")
        stems = [fermat[tri] for tri in tris]
        if len(tris) == 2:
            dev = math.pi - vertex_angle(xy, stems[0], stems[1])
            angles[name] = dev
            if dev > tol:
                violations.append(f"stems through {name} bend by {dev:.3e} rad")
        elif len(tris) == 3:
            worst = max(abs(vertex_angle(xy, stems[i], stems[j]) - TWO_THIRDS_PI)
                        for i, j in ((0, 1), (1, 2), (0, 2)))
            angles[name] = worst
            if worst > tol:
                violations.append(f"junction {name} is off 120 degrees by {worst:.3e} rad")
        else:
            violations.append(f"link {name} is shared by {len(tris)} triangles")
    return ChainReport(not violations, violations, angles, scales)


def _pairs(items):
    items = list(items)
    for i in range(len(items)):
        for j in range(i + 1, len(items)):
            yield items[i], items[j]


def _proj(p, q, x):
    n = dist(p, q)
    return ((x[0] - p[0]) * (q[0] - p[0]) + (x[1] - p[1]) * (q[1] - p[1])) / n


def _interiors_overlap(t1, t2, slack: float = 1e-12) -> bool:
    """Separating-axis test on two triangles; touching boundaries do not count."""
    for tri_a, tri_b in ((t1, t2), (t2, t1)):
        orient = 1.0 if cross(*tri_a) > 0 else -1.0
        for i in range(3):
            p, q = tri_a[i], tri_a[(i + 1) % 3]
            n = dist(p, q)
            if all(orient * cross(p, q, r) / n <= slack for r in tri_b):
                return False
    return True


def _similar_at(layout, tri1, tri2, name, tol):
    """Similarity with equal handedness, matching the shared vertex and the point reflection through it."""
    a1 = [v for v in tri1 if v != name]
    a2 = [v for v in tri2 if v != name]
    P = layout[name]
    for order in (a2, a2[::-1]):
        # The point reflection sends each vertex of one triangle across the link onto the other.
        if all(vertex_angle(P, layout[u], layout[v]) > math.pi - tol for u, v in zip(a1, order)):
            t1 = Triangle.from_coords(layout[a1[0]], P, layout[a1[1]])
            t2 = Triangle.from_coords(layout[order[0]], P, layout[order[1]])
            s = similar_same_chirality(t1, t2, tol=1e-9)
            if s is not None:
                return s
    return None


# --- registry ---------------------------------------------------------------------

SQ3, SQ2 = math.sqrt(3.0), math.sqrt(2.0)
OCTA_DEGENERATE = 4 + 0.5 * (2 + SQ2) * (1 + SQ3)


def _square():
    return regular_polygon(4)


def _hexagon():
    return regular_polygon(6)


def _octagon():
    return regular_polygon(8)


def _registry() -> dict[str, NamedConfiguration]:
    sq, hx, oc, pn = _square(), _hexagon(), _octagon(), regular_polygon(5)
    penta = TriangleChainSpec(
        pn, (("A", "B", "P"), ("C", "D", "Q"), ("P", "Q", "E")),
        (LinkPoint("P", ("A", "D"), through=("B", "E")),
         LinkPoint("Q", ("A", "D"), through=("C", "E"))))
    cfgs = [
        NamedConfiguration("fig1a", 1 + SQ3, 2, 2, "1+sqrt(3)", TriangleChainSpec(
            sq, (("A", "B", "O"), ("C", "D", "O")),
            (LinkPoint("O", ("A", "C"), bracket=(0.5, 0.9)),), similar_at=("O",))),
        NamedConfiguration("fig1b", 1 + (1 + SQ3) / SQ2, 1, 1, "1+(1+sqrt(3))/sqrt(2)", TriangleChainSpec(
            sq, (("A", "B", "C"),), trivial_extensions=(("C", "D"),))),
        NamedConfiguration("fig1c", 3.0, 0, 1, "3", TriangleChainSpec(
            sq, (), trivial_extensions=(("A", "B"), ("B", "C"), ("C", "D")))),
        NamedConfiguration("fig1d", 2 + SQ2, 0, 2, "2+sqrt(2)", TriangleChainSpec(
            sq, (), trivial_extensions=(("A", "B"), ("A", "C"), ("C", "D")))),
        # Minimal tree: two 120-degree corners (degenerate triangles) plus the stem EF.
        NamedConfiguration("fig2a", 5.0, 0, 1, "5", TriangleChainSpec(
            hx, (("A", "B", "C"), ("C", "D", "E")), trivial_extensions=(("E", "F"),))),
        NamedConfiguration("fig2b", math.sqrt(27.0), 4, 3, "sqrt(27)", TriangleChainSpec(
            hx, (("A", "B", "O"), ("C", "D", "O"), ("E", "F", "O")),
            (LinkPoint("O", ("A", "D"), through=("B", "E")),))),
        NamedConfiguration("fig2c", math.sqrt(28.0), 4, 2, "sqrt(28)", TriangleChainSpec(
            hx, (("A", "B", "G"), ("G", "F", "O"), ("O", "C", "H"), ("H", "D", "E")),
            (LinkPoint("O", ("A", "D"), through=("C", "F")),
             LinkPoint("G", ("A", "D"), bracket=(0.2, 0.9)),
             LinkPoint("H", ("D", "A"), bracket=(0.2, 0.9))),
            similar_at=("G", "H"))),
        NamedConfiguration("cfg_a", 1 + math.sqrt(21.0), 3, 1, "1+sqrt(21)", TriangleChainSpec(
            hx, (("B", "C", "G"), ("G", "D", "H"), ("H", "E", "A")),
            (LinkPoint("H", ("D", "A"), bracket=(0.2, 0.9)),
             LinkPoint("G", ("B", "D"), through=("C", "H"))),
            trivial_extensions=(("E", "F"),), similar_at=("G", "H"))),
        NamedConfiguration("cfg_b", 1 + math.sqrt(19.0), 3, 1, "1+sqrt(19)", TriangleChainSpec(
            hx, (("B", "C", "G"), ("G", "H", "A"), ("H", "D", "E")),
            (LinkPoint("H", ("D", "A"), bracket=(0.3, 1.2)),
             LinkPoint("G", ("C", "A"), through=("B", "H"))),
            trivial_extensions=(("E", "F"),), similar_at=("G",))),
        NamedConfiguration("cfg_c", 2 + math.sqrt(13.0), 2, 1, "2+sqrt(13)", TriangleChainSpec(
            hx, (("C", "G", "A"), ("D", "G", "E")),
            (LinkPoint("G", ("D", "A"), bracket=(0.1, 0.8)),),
            trivial_extensions=(("B", "C"), ("E", "F")))),
        # No closed form: both links sit where diagonals cross, and the length is whatever the chain gives.
        NamedConfiguration("penta", chain_length(penta), 3, 1, "derived", penta, exact=False),
        NamedConfiguration("octa_a", (2 + SQ2) * math.sqrt(4 + math.sqrt(6.0)), 6, 2, "(2+sqrt(2))*sqrt(4+sqrt(6))",
                           TriangleChainSpec(
            oc, (("A", "B", "P"), ("P", "H", "Q"), ("Q", "C", "O"), ("O", "G", "R"), ("R", "D", "S"), ("S", "E", "F")),
            (LinkPoint("O", ("A", "E"), through=("C", "G")),
             LinkPoint("Q", ("A", "E"), through=("C", "H")),
             LinkPoint("R", ("E", "A"), through=("D", "G")),
             LinkPoint("P", ("A", "E"), bracket=(0.1, 0.9)),
             LinkPoint("S", ("E", "A"), bracket=(0.1, 0.9))),
            similar_at=("P", "Q", "R", "S"))),
        # Two of the degenerate two-Steiner trees of this length: a four-pin core plus four unit stems.
        NamedConfiguration("octa_b", OCTA_DEGENERATE, 2, 1, "4+(2+sqrt(2))*(1+sqrt(3))/2", TriangleChainSpec(
            oc, (("D", "E", "X"), ("B", "G", "X")),
            (LinkPoint("X", ("D", "G"), bracket=(0.5, 0.95)),),
            trivial_extensions=(("A", "B"), ("C", "D"), ("E", "F"), ("G", "H")))),
        NamedConfiguration("octa_c", OCTA_DEGENERATE, 2, 1, "4+(2+sqrt(2))*(1+sqrt(3))/2", TriangleChainSpec(
            oc, (("C", "F", "X"), ("A", "H", "X")),
            (LinkPoint("X", ("A", "F"), bracket=(0.5, 0.95)),),
            trivial_extensions=(("B", "C"), ("D", "E"), ("E", "F"), ("G", "H")))),
    ]
    return {c.name: c for c in cfgs}


REGISTRY = _registry()


def configuration_names() -> list[str]:
    return list(REGISTRY)


def get_configuration(name: str) -> NamedConfiguration:
    try:
        return REGISTRY[name]
    except KeyError:
        raise ValueError(f"unknown configuration {name!r}; known: {', '.join(REGISTRY)}") from None


def build_configuration(name: str) -> GeometricTree:
    """Solve the links of a registered chain and return the glued tree.

    The reported length is the sum of the per-triangle lengths and the extension stems.
    """
    chain = get_configuration(name).chain
    params = solve_links(chain)
    tree = assemble(chain, params)
    return replace(tree, total_length=chain_length(chain, params))
