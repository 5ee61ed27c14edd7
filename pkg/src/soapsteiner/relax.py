"""Relax Steiner topologies to length minima and classify the resulting trees."""

from __future__ import annotations

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Optional, Sequence

import numpy as np

from .geometry import TWO_THIRDS_PI, Point2, TerminalSet, dist, fermat_xy, rotate, vertex_angle
from .topology import SteinerTopology, enumerate_topologies

log = logging.getLogger(__name__)

SYMMETRY_TOL = 1e-6
STABILITY_TOL = 1e-7
LENGTH_TOL = 1e-9
ROUND_DIGITS = 8
TERMINAL_RULES = ("pinned", "strict")


@dataclass(frozen=True)
class RelaxOptions:
    position_tolerance: float = 1e-12
    max_iterations: int = 100_000
    collapse_distance: float = 1e-9
    # "pinned": terminals may hold edges at any angle (the film is pinned there).
    # "strict": edges meeting at a terminal must also be at least 120 degrees apart.
    terminal_rule: str = "pinned"

    def __post_init__(self):
        if not (self.position_tolerance > 0 and self.max_iterations > 0 and self.collapse_distance > 0):
            raise ValueError("relax options must be positive")
        if self.terminal_rule not in TERMINAL_RULES:
            raise ValueError(f"terminal_rule must be one of {TERMINAL_RULES}")


@dataclass(frozen=True)
class GeometricTree:
    terminals: TerminalSet
    steiner_points: tuple[Point2, ...]
    topology: SteinerTopology
    total_length: float
    p: int
    q: int
    stable: bool
    converged: bool = True
    iterations: int = 0

    def coords(self) -> list[tuple[float, float]]:
        return self.terminals.coords + [s.as_tuple() for s in self.steiner_points]

    def segments(self) -> list[tuple[tuple[float, float], tuple[float, float]]]:
        pts = self.coords()
        return [(pts[u], pts[v]) for u, v in self.topology.edges]

    def edge_length_sum(self) -> float:
        return math.fsum(dist(a, b) for a, b in self.segments())

    def degrees(self) -> list[int]:
        return self.topology.degrees()


def tree_from_positions(terminals: TerminalSet, topology: SteinerTopology, steiner_xy,
                        converged: bool = True, iterations: int = 0,
                        angle_tol: float = STABILITY_TOL, terminal_rule: str = "pinned") -> GeometricTree:
    """Wrap explicit coordinates into a GeometricTree. A tree counts as stable only if it also converged."""
    pts = tuple(Point2(float(x), float(y)) for x, y in steiner_xy)
    tree = GeometricTree(terminals, pts, topology, 0.0, topology.steiner_count, 1, False,
                         converged, iterations)
    tree = replace(tree, total_length=tree.edge_length_sum())
    q = classify_symmetry(tree)
    return replace(tree, q=q, stable=converged and is_stable(tree, angle_tol, terminal_rule=terminal_rule))


def initial_positions(topology: SteinerTopology, terminals: TerminalSet) -> np.ndarray:
    """Seed each Steiner vertex at the average of its neighbours, solved jointly.

    Terminals are fixed; the linear system places every Steiner vertex at the
    centroid of its three neighbours' seeds.
    """
    t, k = topology.terminal_count, topology.steiner_count
    if k == 0:
        return np.zeros((0, 2))
    lap = np.zeros((k, k))
    rhs = np.zeros((k, 2))
    term = np.asarray(terminals.coords)
    for u, v in topology.edges:
        for a, b in ((u, v), (v, u)):
            if a >= t:
                lap[a - t, a - t] += 1.0
                if b >= t:
                    lap[a - t, b - t] -= 1.0
                else:
                    rhs[a - t] += term[b]
    return np.linalg.solve(lap, rhs)


def relax(topology: SteinerTopology, terminals: TerminalSet, options: RelaxOptions = RelaxOptions(),
          record=None) -> GeometricTree:
    """Move Steiner vertices to a length minimum with the terminals held fixed.

    Each sweep re-places every Steiner vertex at the Fermat point of its three
    neighbours. Sweeps stop once no vertex moves more than
    ``options.position_tolerance``. Steiner points that end up on an adjacent
    terminal are merged into it. If ``record`` is a list, the total length after
    each sweep is appended to it.
    """
    t, k = topology.terminal_count, topology.steiner_count
    if t != len(terminals):
        raise ValueError("topology and terminal set sizes differ")
    if k == 0:
        return tree_from_positions(terminals, topology, [], terminal_rule=options.terminal_rule)

    term = [tuple(map(float, p)) for p in terminals.coords]
    pos = [tuple(map(float, p)) for p in initial_positions(topology, terminals)]
    adj = topology.adjacency()
    nbrs = [adj[t + i] for i in range(k)]

    def point(v):
        return term[v] if v < t else pos[v - t]

    def length():
        return math.fsum(dist(point(u), point(v)) for u, v in topology.edges)

    if record is not None:
        record.append(length())
    converged = False
    it = 0
    tol = options.position_tolerance
    while it < options.max_iterations:
        it += 1
        shift = 0.0
        for i in range(k):
            a, b, c = (point(v) for v in nbrs[i])
            new, _ = fermat_xy(a, b, c)
            d = dist(new, pos[i])
            if d > shift:
                shift = d
            pos[i] = new
        if record is not None:
            record.append(length())
        if shift < tol:
            converged = True
            break
    if not converged:
        log.warning("relaxation stopped after %d sweeps without converging", it)

    topology, pos = collapse(topology, term, pos, options.collapse_distance)
    return tree_from_positions(terminals, topology, pos, converged=converged, iterations=it,
                               terminal_rule=options.terminal_rule)


def collapse(topology: SteinerTopology, term, pos, distance: float):
    """Merge Steiner vertices sitting on an adjacent terminal, while the terminal degree allows."""
    t = topology.terminal_count
    pos = list(pos)
    changed = True
    while changed:
        changed = False
        deg = topology.degrees()
        for u, v in topology.edges:
            if u < t <= v and deg[u] <= 2 and dist(term[u], pos[v - t]) < distance:
                shift = lambda x: u if x == v else (x - 1 if x > v else x)  # noqa: E731
                edges = tuple(sorted(
                    tuple(sorted((shift(a), shift(b)))) for a, b in topology.edges if {a, b} != {u, v}
                ))
                topology = SteinerTopology(t, topology.steiner_count - 1, edges)
                del pos[v - t]
                changed = True
                break
    return topology, pos


def _edge_angles(center, others) -> list[float]:
    out = []
    for i in range(len(others)):
        for j in range(i + 1, len(others)):
            out.append(vertex_angle(center, others[i], others[j]))
    return out


def is_stable(tree: GeometricTree, angle_tol: float = STABILITY_TOL, zero_length: float = 1e-12,
              terminal_rule: str = "pinned") -> bool:
    """True when every Steiner junction is at 120 degrees and no edge has zero length.

    Under ``terminal_rule="strict"`` edges meeting at a terminal must also be at
    least 120 degrees apart.
    """
    if terminal_rule not in TERMINAL_RULES:
        raise ValueError(f"terminal_rule must be one of {TERMINAL_RULES}")
    pts = tree.coords()
    adj = tree.topology.adjacency()
    t = tree.topology.terminal_count
    for v, nbrs in enumerate(adj):
        others = [pts[w] for w in nbrs]
        if any(dist(pts[v], o) <= zero_length for o in others):
            return False
        angles = _edge_angles(pts[v], others)
        if v >= t:
            if any(abs(a - TWO_THIRDS_PI) > angle_tol for a in angles):
                return False
        elif terminal_rule == "strict" and any(a < TWO_THIRDS_PI - angle_tol for a in angles):
            return False
    return True


def _divisors_desc(n: int) -> list[int]:
    return [d for d in range(n, 0, -1) if n % d == 0]


def _segments_match(segs, other, tol) -> bool:
    used = [False] * len(other)
    for a, b in segs:
        for j, (c, d) in enumerate(other):
            if used[j]:
                continue
            if (dist(a, c) <= tol and dist(b, d) <= tol) or (dist(a, d) <= tol and dist(b, c) <= tol):
                used[j] = True
                break
        else:
            return False
    return True


def segments_symmetry(segments, center, order: int, tol: float = SYMMETRY_TOL) -> int:
    """Largest divisor d of ``order`` whose 2pi/d rotation about ``center`` preserves the segments."""
    for d in _divisors_desc(order):
        if d == 1:
            return 1
        theta = 2.0 * math.pi / d
        rotated = [(rotate(a, theta, center), rotate(b, theta, center)) for a, b in segments]
        if _segments_match(rotated, segments, tol):
            return d
    return 1


def classify_symmetry(tree: GeometricTree, tol: float = SYMMETRY_TOL) -> int:
    return segments_symmetry(tree.segments(), tuple(tree.terminals.center), tree.terminals.symmetry_order, tol)


def effective_nodal_total(tree) -> int:
    """Sum over terminals of (degree - 1)."""
    t = len(tree.terminals)
    return sum(d - 1 for d in tree.degrees()[:t])


def dihedral_images(segments, center, order: int):
    """The segment list under every rotation and reflection of a regular ``order``-gon about ``center``."""
    cx, cy = center
    out = []
    for j in range(order):
        theta = 2.0 * math.pi * j / order
        c, s = math.cos(theta), math.sin(theta)
        for reflect in (False, True):
            def f(p):
                x, y = p[0] - cx, p[1] - cy
                if reflect:
                    y = -y
                return (cx + c * x - s * y, cy + s * x + c * y)
            out.append([(f(a), f(b)) for a, b in segments])
    return out


def _r(x: float) -> float:
    v = round(x, ROUND_DIGITS)
    return 0.0 if v == 0 else v


def segment_key(segments) -> tuple:
    """Sorted multiset of rounded segment endpoints, orientation-free."""
    keyed = []
    for a, b in segments:
        pa, pb = (_r(a[0]), _r(a[1])), (_r(b[0]), _r(b[1]))
        keyed.append((pa, pb) if pa <= pb else (pb, pa))
    return tuple(sorted(keyed))


def congruence_key(segments, center, order: int) -> tuple:
    return min(segment_key(img) for img in dihedral_images(segments, center, order))


def dihedral_dedupe(items, segments_of, center, order: int) -> list:
    """Keep one item per dihedral class: the one whose own segment key is smallest."""
    best = {}
    for item in items:
        segs = segments_of(item)
        ck = congruence_key(segs, center, order)
        own = segment_key(segs)
        if ck not in best or own < best[ck][0]:
            best[ck] = (own, item)
    return [best[ck][1] for ck in sorted(best)]


@dataclass
class SearchDiagnostics:
    topologies: int = 0
    relaxed: int = 0
    unconverged: int = 0
    unstable: int = 0
    over_length: int = 0
    kept_before_dedupe: int = 0
    unconverged_topologies: list = field(default_factory=list)


def _relax_job(args):
    topology, terminals, options = args
    return relax(topology, terminals, options)


def search_local_minima(terminals: TerminalSet, max_length: float, options: RelaxOptions = RelaxOptions(),
                        steiner_range: Optional[tuple[int, int]] = None, workers: int = 1,
                        topologies: Optional[Sequence[SteinerTopology]] = None):
    """Relax every topology and return (stable trees up to ``max_length``, diagnostics).

    Trees are deduplicated under the polygon's dihedral group and sorted by length.
    """
    if topologies is None:
        topologies = enumerate_topologies(len(terminals), steiner_range)
    diag = SearchDiagnostics(topologies=len(topologies))
    jobs = [(tp, terminals, options) for tp in topologies]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            trees = list(pool.map(_relax_job, jobs, chunksize=32))
    else:
        trees = [_relax_job(j) for j in jobs]
    kept = []
    for tp, tree in zip(topologies, trees):
        diag.relaxed += 1
        if not tree.converged:
            diag.unconverged += 1
            diag.unconverged_topologies.append(tp)
            continue
        if not tree.stable:
            diag.unstable += 1
            continue
        if tree.total_length > max_length + LENGTH_TOL:
            diag.over_length += 1
            continue
        kept.append(tree)
    diag.kept_before_dedupe = len(kept)
    center = tuple(terminals.center)
    unique = dihedral_dedupe(kept, GeometricTree.segments, center, terminals.symmetry_order)
    unique.sort(key=lambda tr: (round(tr.total_length, 9), segment_key(tr.segments())))
    return unique, diag


def find_all_local_minima(terminals: TerminalSet, max_length: float, options: RelaxOptions = RelaxOptions(),
                          workers: int = 1) -> list[GeometricTree]:
    return search_local_minima(terminals, max_length, options, workers=workers)[0]
