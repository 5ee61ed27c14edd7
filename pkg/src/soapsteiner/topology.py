"""Combinatorial Steiner topologies over a fixed, labelled terminal set.

Vertices ``0..terminal_count-1`` are terminals; the rest are Steiner vertices of
degree three. Two topologies are the same when they differ only by a renaming of
Steiner vertices. A tree whose low-degree vertices are all labelled is fixed by
its set of edge splits, so the split set serves as the canonical form.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable

Edge = tuple[int, int]

MAX_TERMINALS = 8


def _norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class SteinerTopology:
    terminal_count: int
    steiner_count: int
    edges: tuple[Edge, ...]

    def __post_init__(self):
        t, k = self.terminal_count, self.steiner_count
        if t < 2:
            raise ValueError("need at least two terminals")
        if k < 0 or k > max(t - 2, 0):
            raise ValueError(f"steiner_count {k} outside [0, {t - 2}]")
        if len(self.edges) != t + k - 1:
            raise ValueError("a tree on V vertices has V - 1 edges")
        nv = t + k
        deg = [0] * nv
        for u, v in self.edges:
            if not (0 <= u < nv and 0 <= v < nv) or u == v:
                raise ValueError(f"bad edge ({u}, {v})")
            deg[u] += 1
            deg[v] += 1
        for i in range(t):
            if not 1 <= deg[i] <= 3:
                raise ValueError(f"terminal {i} has degree {deg[i]}")
        for s in range(t, nv):
            if deg[s] != 3:
                raise ValueError(f"Steiner vertex {s} has degree {deg[s]}")
        if not _connected(nv, self.edges):
            raise ValueError("edges do not form a tree")

    @property
    def vertex_count(self) -> int:
        return self.terminal_count + self.steiner_count

    def adjacency(self) -> list[list[int]]:
        return _adjacency(self.vertex_count, self.edges)

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adjacency()]

    def splits(self) -> frozenset[int]:
        return _splits(self.terminal_count, self.vertex_count, self.edges)

    def canonical_key(self) -> tuple:
        return (self.steiner_count, tuple(sorted(self.splits())))

    def is_full(self) -> bool:
        return self.steiner_count == self.terminal_count - 2


def _adjacency(nv: int, edges: Iterable[Edge]) -> list[list[int]]:
    adj: list[list[int]] = [[] for _ in range(nv)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    return adj


def _connected(nv: int, edges) -> bool:
    adj = _adjacency(nv, edges)
    seen = {0}
    stack = [0]
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == nv


def _side_masks(terminal_count: int, nv: int, edges) -> dict[Edge, int]:
    """For each edge, the bitmask of terminals on the side away from terminal 0."""
    adj = _adjacency(nv, edges)
    parent = {0: -1}
    order = [0]
    for u in order:
        for w in adj[u]:
            if w not in parent:
                parent[w] = u
                order.append(w)
    below = [0] * nv
    for u in reversed(order):
        if u < terminal_count:
            below[u] |= 1 << u
        if parent[u] >= 0:
            below[parent[u]] |= below[u]
    return {_norm_edge(u, parent[u]): below[u] for u in order if parent[u] >= 0}


def _splits(terminal_count, nv, edges) -> frozenset[int]:
    return frozenset(_side_masks(terminal_count, nv, edges).values())


def canonicalize(terminal_count: int, edges: Iterable[Edge]) -> SteinerTopology:
    """Build a topology with Steiner vertices renumbered into a canonical order.

    ``edges`` may use any hashable ids >= terminal_count for Steiner vertices.
    """
    edges = list(edges)
    steiner_ids = sorted({v for e in edges for v in e if not _is_terminal(v, terminal_count)}, key=repr)
    index = {s: terminal_count + i for i, s in enumerate(steiner_ids)}
    relabel = lambda v: v if _is_terminal(v, terminal_count) else index[v]  # noqa: E731
    tmp = [_norm_edge(relabel(u), relabel(v)) for u, v in edges]
    nv = terminal_count + len(steiner_ids)
    masks = _side_masks(terminal_count, nv, tmp)
    # Order Steiner vertices by the sorted splits of their incident edges.
    sig = defaultdict(list)
    for e, m in masks.items():
        for v in e:
            if v >= terminal_count:
                sig[v].append(m)
    order = sorted(range(terminal_count, nv), key=lambda s: sorted(sig[s]))
    final = {s: terminal_count + i for i, s in enumerate(order)}
    fix = lambda v: v if v < terminal_count else final[v]  # noqa: E731
    out = sorted(_norm_edge(fix(u), fix(v)) for u, v in tmp)
    return SteinerTopology(terminal_count, len(steiner_ids), tuple(out))


def _is_terminal(v, terminal_count) -> bool:
    return isinstance(v, int) and 0 <= v < terminal_count


def full_topologies(terminal_count: int) -> list[SteinerTopology]:
    """All full topologies, built by inserting each new terminal into an edge of the previous tree."""
    if terminal_count < 3:
        raise ValueError("full topologies need at least 3 terminals")
    trees = [[(0, ("s", 0)), (1, ("s", 0)), (2, ("s", 0))]]
    for t in range(3, terminal_count):
        grown = []
        for tree in trees:
            s = ("s", t - 2)
            for i, (u, v) in enumerate(tree):
                rest = tree[:i] + tree[i + 1:]
                grown.append(rest + [(u, s), (s, v), (t, s)])
        trees = grown
    return [canonicalize(terminal_count, tree) for tree in trees]


def contract(topology: SteinerTopology, terminal: int, steiner: int) -> SteinerTopology:
    """Merge a Steiner vertex into an adjacent terminal (the Steiner point degenerates onto it)."""
    t = topology.terminal_count
    if not (0 <= terminal < t <= steiner < topology.vertex_count):
        raise ValueError("need a terminal and a Steiner vertex")
    if _norm_edge(terminal, steiner) not in topology.edges:
        raise ValueError("vertices are not adjacent")
    edges = []
    for u, v in topology.edges:
        if {u, v} == {terminal, steiner}:
            continue
        u = terminal if u == steiner else u
        v = terminal if v == steiner else v
        edges.append((u, v))
    return canonicalize(t, [(u if u < t else ("s", u), v if v < t else ("s", v)) for u, v in edges])


def _contractions(topology: SteinerTopology) -> Iterable[SteinerTopology]:
    t = topology.terminal_count
    deg = topology.degrees()
    for u, v in topology.edges:
        if u < t <= v and deg[u] <= 2:
            yield contract(topology, u, v)


def enumerate_topologies(terminal_count: int, steiner_range: tuple[int, int] | int | None = None) -> list[SteinerTopology]:
    """Every topology with Steiner count in the inclusive ``steiner_range``.

    Results are unique up to renaming of Steiner vertices and come back sorted by
    (steiner_count, split signature).
    """
    if not 3 <= terminal_count <= MAX_TERMINALS:
        raise ValueError(f"terminal_count must be in [3, {MAX_TERMINALS}]")
    if steiner_range is None:
        lo, hi = 0, terminal_count - 2
    elif isinstance(steiner_range, int):
        lo = hi = steiner_range
    else:
        lo, hi = steiner_range
    if not 0 <= lo <= hi <= terminal_count - 2:
        raise ValueError(f"steiner_range must lie within [0, {terminal_count - 2}]")

    level = {tp.canonical_key(): tp for tp in full_topologies(terminal_count)}
    found = {}
    k = terminal_count - 2
    while k >= lo:
        if k <= hi:
            found.update(level)
        if k == lo:
            break
        nxt = {}
        for tp in level.values():
            for c in _contractions(tp):
                nxt.setdefault(c.canonical_key(), c)
        level = nxt
        k -= 1
    return [found[key] for key in sorted(found)]


def full_topology_count(terminal_count: int) -> int:
    """(2n-4)! / (2^(n-2) (n-2)!) full topologies on n labelled terminals."""
    from math import factorial

    n = terminal_count
    return factorial(2 * n - 4) // (2 ** (n - 2) * factorial(n - 2))
