import pytest
from hypothesis import given, strategies as st

from oracles import brute_topology_count
from soapsteiner.topology import (
    SteinerTopology,
    canonicalize,
    contract,
    enumerate_topologies,
    full_topologies,
    full_topology_count,
)


def test_three_terminals_one_full_topology():
    tops = enumerate_topologies(3, 1)
    assert len(tops) == 1 and tops[0].edges == ((0, 3), (1, 3), (2, 3))


def test_four_terminals_three_full_topologies():
    assert len(enumerate_topologies(4, 2)) == 3


@pytest.mark.parametrize("n", [3, 4, 5, 6, 7])
def test_full_count_matches_double_factorial(n):
    assert len(full_topologies(n)) == len(enumerate_topologies(n, n - 2)) == full_topology_count(n)


def test_six_terminal_full_count_is_105():
    assert len(enumerate_topologies(6, 4)) == 105 == full_topology_count(6)


@pytest.mark.parametrize("t, k", [(3, 0), (3, 1), (4, 0), (4, 1), (4, 2), (5, 0), (5, 1), (5, 2), (5, 3), (6, 1)])
def test_counts_match_brute_force(t, k):
    assert len(enumerate_topologies(t, k)) == brute_topology_count(t, k)


def test_known_larger_counts():
    # Brute-force counts worked out once with the sequence decoder (too slow to repeat here).
    assert len(enumerate_topologies(6, 0)) == 1170
    assert len(enumerate_topologies(6)) == 5625


@pytest.mark.parametrize("args", [(2, None), (9, None), (6, (0, 5)), (6, (3, 2)), (6, -1)])
def test_rejects_out_of_range(args):
    with pytest.raises(ValueError):
        enumerate_topologies(*args)


def test_order_is_deterministic():
    assert enumerate_topologies(6, (2, 3)) == enumerate_topologies(6, (2, 3))


@pytest.mark.parametrize("edges", [
    ((0, 1), (1, 2)),                    # too few edges
    ((0, 4), (1, 4), (2, 4), (3, 4), (0, 1)),  # cycle and a degree-4 Steiner vertex
])
def test_invariants_enforced(edges):
    with pytest.raises(ValueError):
        SteinerTopology(4, 1, edges)


def test_terminal_degree_at_most_three():
    star = tuple((0, i) for i in range(1, 5))
    with pytest.raises(ValueError):
        SteinerTopology(5, 0, star)


def test_canonical_form_ignores_steiner_names():
    a = canonicalize(4, [(0, "x"), (1, "x"), ("x", "y"), (2, "y"), (3, "y")])
    b = canonicalize(4, [(0, "q"), (1, "q"), ("q", "p"), (2, "p"), (3, "p")])
    assert a == b


@given(st.integers(0, 104), st.data())
def test_contraction_keeps_invariants(index, data):
    top = enumerate_topologies(6, 4)[index]
    t = top.terminal_count
    candidates = [(u, v) for u, v in top.edges if u < t <= v]
    u, v = data.draw(st.sampled_from(candidates))
    c = contract(top, u, v)
    assert c.steiner_count == top.steiner_count - 1
    assert c.degrees()[u] == 2
