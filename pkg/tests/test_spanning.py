import math

import pytest
from hypothesis import given, settings, strategies as st

from oracles import networkx_mst_length, networkx_spanning_lengths
from soapsteiner.geometry import Point2, TerminalSet, regular_polygon
from soapsteiner.relax import find_all_local_minima
from soapsteiner.spanning import (
    SpanningTree,
    enumerate_spanning_trees,
    minimum_spanning_tree,
    prufer_edges,
    spanning_catalog,
)


@pytest.mark.parametrize("n", [3, 4, 5, 6, 7])
def test_cayley_count(n):
    assert len(enumerate_spanning_trees(regular_polygon(n))) == n ** (n - 2)


def test_lengths_match_networkx_decoder():
    hexagon = regular_polygon(6)
    ours = sorted(t.total_length for t in enumerate_spanning_trees(hexagon))
    ref = sorted(networkx_spanning_lengths(hexagon.coords))
    assert ours == pytest.approx(ref, abs=1e-12)


def test_hexagon_minimum_is_five():
    trees = enumerate_spanning_trees(regular_polygon(6))
    assert min(t.total_length for t in trees) == pytest.approx(5.0, abs=1e-12)


@pytest.mark.parametrize("n, expected", [(3, 2.0), (4, 3.0), (6, 5.0)])
def test_mst_examples(n, expected):
    assert minimum_spanning_tree(regular_polygon(n)).total_length == pytest.approx(expected, abs=1e-12)


@pytest.mark.parametrize("n", [3, 4, 5, 6, 7])
def test_mst_matches_brute_force(n):
    poly = regular_polygon(n)
    brute = min(t.total_length for t in enumerate_spanning_trees(poly))
    assert minimum_spanning_tree(poly).total_length == pytest.approx(brute, abs=1e-12)


def test_mst_tie_break_is_lexicographic():
    assert minimum_spanning_tree(regular_polygon(6)).edges == ((0, 1), (0, 5), (1, 2), (2, 3), (3, 4))


@settings(max_examples=50)
@given(st.lists(st.tuples(st.floats(-5, 5), st.floats(-5, 5)), min_size=3, max_size=7, unique=True))
def test_mst_against_networkx(points):
    try:
        ts = TerminalSet(tuple(Point2(*p) for p in points))
    except ValueError:
        return
    assert minimum_spanning_tree(ts).total_length == pytest.approx(networkx_mst_length(ts.coords), abs=1e-9)


@pytest.mark.parametrize("n", [4, 5, 6])
def test_steiner_never_loses_to_spanning(n):
    poly = regular_polygon(n)
    mst = minimum_spanning_tree(poly).total_length
    assert min(t.total_length for t in find_all_local_minima(poly, mst)) <= mst + 1e-9


def test_rejects_oversize():
    with pytest.raises(ValueError):
        enumerate_spanning_trees(regular_polygon(10))


def test_tree_invariants():
    with pytest.raises(ValueError):
        SpanningTree(((0, 1), (1, 2), (0, 2)), 3.0)
    assert len(prufer_edges((3, 3, 3, 3), 6)) == 5


def test_catalog_under_six():
    hexagon = regular_polygon(6)
    groups = spanning_catalog(hexagon, 6.0)
    lengths = {round(g.length, 9) for g in groups}
    assert lengths == {5.0, round(4 + math.sqrt(3), 9), 6.0}
    total = sum(1 for t in enumerate_spanning_trees(hexagon) if t.total_length <= 6 + 1e-9)
    assert sum(g.multiplicity for g in groups) == total
    for g in groups:
        assert len(g.representative.edges) == 5
    assert {g.q for g in groups} == {1, 2}


def test_catalog_under_five_is_perimeter_paths():
    groups = spanning_catalog(regular_polygon(6), 5.0)
    assert len(groups) == 1
    assert groups[0].length == pytest.approx(5.0) and groups[0].multiplicity == 6


def test_catalog_below_five_is_empty():
    assert spanning_catalog(regular_polygon(6), 4.9) == []
