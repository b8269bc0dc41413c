import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import naive_expansion
from cutmatch.graph import (
    Cut,
    DiGraph,
    GraphFormatError,
    InvalidCutError,
    expansion,
    find_zero_expansion_cut,
    graph_hash,
    is_strongly_connected,
    out_boundary,
    parse_graph,
    serialize_graph,
    union_of_matchings,
)
from cutmatch.matching_player import DirectedPerfectMatching

CYCLE4 = DiGraph(4, ((0, 1), (1, 2), (2, 3), (3, 0)))
EDGE = DiGraph(2, ((0, 1),))


@st.composite
def digraphs(draw, max_n=7, max_m=20):
    n = draw(st.integers(2, max_n))
    arcs = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=max_m))
    return DiGraph(n, tuple(arcs))


def test_out_boundary_examples():
    assert out_boundary(EDGE, [0]) == [(0, 1)]
    assert out_boundary(EDGE, [1]) == []
    assert out_boundary(CYCLE4, [0, 1]) == [(1, 2)]


def test_out_boundary_keeps_multiplicity_and_skips_loops():
    G = DiGraph(3, ((0, 1), (0, 1), (0, 0), (1, 2)))
    assert out_boundary(G, [0]) == [(0, 1), (0, 1)]
    assert expansion(G, [0]) == 2


@pytest.mark.parametrize("side", [[], [0, 1, 2, 3]])
def test_invalid_cut_rejected(side):
    with pytest.raises(InvalidCutError):
        out_boundary(CYCLE4, side)


def test_expansion_examples():
    assert expansion(EDGE, [0]) == 1
    assert expansion(EDGE, [1]) == 0
    assert expansion(CYCLE4, [0, 1]) == Fraction(1, 2)


@given(digraphs())
@settings(max_examples=60, deadline=None)
def test_expansion_matches_definition_for_both_orientations(G):
    for k in range(1, G.n):
        for S in itertools.combinations(range(G.n), k):
            comp = [v for v in range(G.n) if v not in S]
            assert expansion(G, S) == naive_expansion(G.n, G.arcs, S)
            assert expansion(G, comp) == naive_expansion(G.n, G.arcs, comp)
            assert 0 <= expansion(G, S) <= G.m


def test_canonical_cut():
    assert Cut(4, (2, 3)).canonical().side == (0, 1)
    assert Cut(4, (0, 3)).canonical().side == (0, 3)
    assert Cut(5, (0, 1, 2)).canonical().side == (3, 4)


def test_zero_expansion_cut_examples():
    cut = find_zero_expansion_cut(DiGraph(2, ((0, 1),)))
    assert cut.side == (1,)
    tri = [(0, 1), (1, 0), (1, 2), (2, 1), (0, 2), (2, 0)]
    assert find_zero_expansion_cut(DiGraph(3, tuple(tri))) is None
    two = tri + [(u + 3, v + 3) for u, v in tri] + [(2, 3)]
    G = DiGraph(6, tuple(two))
    cut = find_zero_expansion_cut(G)
    assert cut.side == (3, 4, 5)
    assert expansion(G, cut) == 0


@given(digraphs(max_n=8))
@settings(max_examples=100, deadline=None)
def test_zero_cut_iff_not_strongly_connected(G):
    # reachability closure as an independent strong-connectivity oracle
    reach = np.eye(G.n, dtype=bool)
    for u, v in G.arcs:
        reach[u, v] = True
    for k in range(G.n):
        reach |= reach[:, [k]] & reach[[k], :]
    strongly = bool(reach.all())
    cut = find_zero_expansion_cut(G)
    assert (cut is None) == strongly == is_strongly_connected(G)
    if cut is not None:
        assert expansion(G, cut) == 0


def test_union_of_matchings():
    assert union_of_matchings([], n=4).m == 0
    M = DirectedPerfectMatching(2, ((0, 1),), ((1, 0),))
    H = union_of_matchings([M])
    assert sorted(H.arcs) == [(0, 1), (1, 0)]
    with pytest.raises(ValueError):
        union_of_matchings([M, DirectedPerfectMatching(4, ((0, 2), (1, 3)), ((2, 0), (3, 1)))])


def test_union_degrees(rng):
    from conftest import random_perfect_matching_arcs

    n, t = 10, 7
    ms = [DirectedPerfectMatching(n, *random_perfect_matching_arcs(n, rng)) for _ in range(t)]
    H = union_of_matchings(ms)
    assert H.m == t * n
    indeg, outdeg = H.degrees()
    assert indeg == [t] * n and outdeg == [t] * n


def test_parse_examples():
    assert parse_graph("2 1\n0 1") == EDGE
    assert parse_graph("4 4\n0 1\n1 2\n2 3\n3 0") == CYCLE4
    assert parse_graph("# comment\n2 1\n\n# another\n0 1\n") == EDGE


@pytest.mark.parametrize(
    "text, line",
    [
        ("2 2\n0 1\n", 2),
        ("2 1\n0 5\n", 2),
        ("2 1\n0 x\n", 2),
        ("2 1\n0 1 2\n", 2),
        ("2\n", 1),
        ("", None),
    ],
)
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(GraphFormatError) as info:
        parse_graph(text)
    assert info.value.line == line


def test_round_trip_random_graphs(rng):
    for _ in range(100):
        n = int(rng.integers(1, 12))
        m = int(rng.integers(0, 30))
        arcs = tuple((int(a), int(b)) for a, b in rng.integers(0, n, (m, 2)))
        G = DiGraph(n, arcs)
        assert parse_graph(serialize_graph(G)) == G


def test_graph_hash_ignores_arc_order():
    a = DiGraph(3, ((0, 1), (1, 2), (0, 1)))
    b = DiGraph(3, ((1, 2), (0, 1), (0, 1)))
    c = DiGraph(3, ((1, 2), (0, 1)))
    assert graph_hash(a) == graph_hash(b) != graph_hash(c)
