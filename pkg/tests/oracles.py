"""Independent reference computations used as test oracles."""

from __future__ import annotations

import itertools
import math

import networkx as nx
import numpy as np
from scipy.optimize import minimize, minimize_scalar


def fermat_numeric(a, b, c):
    """Minimise the summed distance to three points directly (Nelder-Mead from the centroid)."""
    pts = np.array([a, b, c], dtype=float)

    def f(x):
        return float(np.sum(np.hypot(pts[:, 0] - x[0], pts[:, 1] - x[1])))

    scale = float(np.max(np.ptp(pts, axis=0)))
    opts = {"xatol": 1e-12 * scale, "fatol": 1e-15 * scale, "maxiter": 20000, "maxfev": 40000}
    # The objective is flat near its minimum, so positions are good to about 1e-8 at best.
    res = minimize(f, pts.mean(axis=0), method="Nelder-Mead", options=opts)
    return tuple(res.x), res.fun


def isoceles_right_length():
    """Shortest tree on (0,0), (1,0), (0,1): the junction lies on the line y = x."""
    res = minimize_scalar(lambda t: 2 * math.hypot(1 - t, t) + math.sqrt(2) * t,
                          bounds=(0.0, 0.5), method="bounded", options={"xatol": 1e-12})
    return res.x, res.fun


def brute_topology_count(terminals: int, steiner: int) -> int:
    """Count Steiner topologies by decoding every label sequence and reducing Steiner relabellings."""
    nv = terminals + steiner
    steiner_ids = range(terminals, nv)
    seen = set()
    for seq in itertools.product(range(nv), repeat=nv - 2):
        # In a label sequence, vertex v appears deg(v) - 1 times.
        if any(seq.count(s) != 2 for s in steiner_ids) or any(seq.count(t) > 2 for t in range(terminals)):
            continue
        g = nx.from_prufer_sequence(list(seq))
        forms = []
        for perm in itertools.permutations(steiner_ids):
            m = dict(zip(steiner_ids, perm))
            forms.append(tuple(sorted(tuple(sorted((m.get(u, u), m.get(v, v)))) for u, v in g.edges)))
        seen.add(min(forms))
    return len(seen)


def networkx_spanning_lengths(coords):
    """Total lengths of all labelled spanning trees, via networkx's sequence decoder."""
    n = len(coords)
    out = []
    for seq in itertools.product(range(n), repeat=n - 2):
        g = nx.from_prufer_sequence(list(seq))
        out.append(math.fsum(math.dist(coords[u], coords[v]) for u, v in g.edges))
    return out


def networkx_mst_length(coords):
    g = nx.Graph()
    for i, j in itertools.combinations(range(len(coords)), 2):
        g.add_edge(i, j, weight=math.dist(coords[i], coords[j]))
    return math.fsum(d["weight"] for *_, d in nx.minimum_spanning_tree(g).edges(data=True))


def rotation_invariant(segments, center, order, tol=1e-6):
    """Largest d | order with a 2pi/d rotation mapping the segment set onto itself (numpy brute force)."""
    segs = np.array([[a, b] for a, b in segments], dtype=float) - np.array(center)
    for d in sorted((d for d in range(1, order + 1) if order % d == 0), reverse=True):
        th = 2 * math.pi / d
        rot = np.array([[math.cos(th), -math.sin(th)], [math.sin(th), math.cos(th)]])
        moved = segs @ rot.T
        ok = True
        for s in moved:
            fwd = np.abs(segs - s).max(axis=(1, 2))
            rev = np.abs(segs - s[::-1]).max(axis=(1, 2))
            if min(fwd.min(), rev.min()) > tol:
                ok = False
                break
        if ok:
            return d
    return 1
