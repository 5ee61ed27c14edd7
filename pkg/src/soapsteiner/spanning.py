"""Spanning trees of the complete Euclidean graph on a terminal set."""

from __future__ import annotations

import heapq
import itertools
import math
from dataclasses import dataclass

from .geometry import TerminalSet, dist
from .relax import LENGTH_TOL, congruence_key, segment_key, segments_symmetry

MAX_SPANNING_TERMINALS = 9


@dataclass(frozen=True)
class SpanningTree:
    edges: tuple[tuple[int, int], ...]
    total_length: float

    def __post_init__(self):
        n = len(self.edges) + 1
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for u, v in self.edges:
            if not (0 <= u < n and 0 <= v < n) or u >= v:
                raise ValueError(f"bad edge ({u}, {v})")
            ru, rv = find(u), find(v)
            if ru == rv:
                raise ValueError("edges contain a cycle")
            parent[ru] = rv

    @property
    def terminal_count(self) -> int:
        return len(self.edges) + 1

    def segments(self, terminals: TerminalSet):
        pts = terminals.coords
        return [(pts[u], pts[v]) for u, v in self.edges]

    def degrees(self) -> list[int]:
        deg = [0] * self.terminal_count
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg


def _tree(edges, pts) -> SpanningTree:
    edges = tuple(sorted(edges))
    return SpanningTree(edges, math.fsum(dist(pts[u], pts[v]) for u, v in edges))


def prufer_edges(seq, n: int) -> list[tuple[int, int]]:
    """Decode a label sequence of length n-2 into the edges of a labelled tree."""
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    leaves = [i for i in range(n) if degree[i] == 1]
    heapq.heapify(leaves)
    edges = []
    for x in seq:
        leaf = heapq.heappop(leaves)
        edges.append((min(leaf, x), max(leaf, x)))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(leaves, x)
    u, v = heapq.heappop(leaves), heapq.heappop(leaves)
    edges.append((u, v))
    return edges


def _check_size(terminals: TerminalSet) -> int:
    n = len(terminals)
    if n > MAX_SPANNING_TERMINALS:
        raise ValueError(f"at most {MAX_SPANNING_TERMINALS} terminals ({n} given)")
    return n


def enumerate_spanning_trees(terminals: TerminalSet) -> list[SpanningTree]:
    """All n^(n-2) labelled spanning trees, in label-sequence order."""
    n = _check_size(terminals)
    pts = terminals.coords
    return [_tree(prufer_edges(seq, n), pts) for seq in itertools.product(range(n), repeat=n - 2)]


def minimum_spanning_tree(terminals: TerminalSet) -> SpanningTree:
    """Kruskal on Euclidean weights; equal weights fall back to lexicographic edge order."""
    n = len(terminals)
    pts = terminals.coords
    order = sorted(itertools.combinations(range(n), 2), key=lambda e: (dist(pts[e[0]], pts[e[1]]), e))
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    chosen = []
    for u, v in order:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            chosen.append((u, v))
            if len(chosen) == n - 1:
                break
    return _tree(chosen, pts)


@dataclass(frozen=True)
class SpanningGroup:
    length: float
    representative: SpanningTree
    multiplicity: int
    q: int


def spanning_catalog(terminals: TerminalSet, max_length: float) -> list[SpanningGroup]:
    """Trees no longer than ``max_length``, grouped by congruence under the polygon's dihedral group."""
    center = tuple(terminals.center)
    order = terminals.symmetry_order
    groups: dict[tuple, list] = {}
    for tree in enumerate_spanning_trees(terminals):
        if tree.total_length > max_length + LENGTH_TOL:
            continue
        segs = tree.segments(terminals)
        key = congruence_key(segs, center, order)
        own = segment_key(segs)
        slot = groups.get(key)
        if slot is None:
            groups[key] = [own, tree, 1]
        else:
            slot[2] += 1
            if own < slot[0]:
                slot[0], slot[1] = own, tree
    out = []
    for _own, tree, count in groups.values():
        q = segments_symmetry(tree.segments(terminals), center, order)
        out.append(SpanningGroup(tree.total_length, tree, count, q))
    out.sort(key=lambda g: (round(g.length, 9), segment_key(g.representative.segments(terminals))))
    return out
