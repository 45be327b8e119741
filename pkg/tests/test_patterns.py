import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from planarspex import Graph
from planarspex.graph import (
    complete,
    complete_bipartite,
    cycle,
    family_F,
    family_M,
    family_W,
    friendship,
    k_disjoint_edges,
    path,
    wheel,
)
from planarspex.patterns import (
    Friendship,
    Generic,
    Matching,
    PatternError,
    Wheel,
    contains_friendship,
    contains_subgraph,
    contains_wheel,
    fits_in_K2m,
    is_pattern_free,
    matching_number,
    maximum_matching,
    parse_pattern,
)

import oracles
from conftest import graphs, random_planar


def test_containment_examples():
    assert contains_subgraph(complete_bipartite(2, 3), cycle(4))
    assert not contains_subgraph(complete_bipartite(2, 3), complete(3))
    assert not contains_subgraph(family_W(12, 5), wheel(5))
    assert contains_subgraph(wheel(6), wheel(6))
    assert contains_subgraph(path(3), Graph(0, ()))


def test_matching_examples():
    assert matching_number(path(5)) == 2
    assert matching_number(cycle(7)) == 3
    g = family_M(20, 4)
    assert matching_number(g) == 4 == oracles.brute_matching_number(g.n, g.edges())


def test_maximum_matching_is_valid():
    rng = random.Random(3)
    for _ in range(200):
        g = random_planar(rng, rng.randint(2, 30), keep=0.5)
        m = maximum_matching(g)
        used = [v for e in m for v in e]
        assert len(used) == len(set(used))
        assert all(g.has_edge(u, v) for u, v in m)


def test_pattern_free_examples():
    assert is_pattern_free(family_F(25, 3), Friendship(3))
    assert is_pattern_free(complete_bipartite(2, 6), Wheel(3))
    assert not is_pattern_free(k_disjoint_edges(4), Matching(4))


def test_fits_in_K2m_examples():
    assert fits_in_K2m(path(5))
    assert not fits_in_K2m(complete(3))
    assert not fits_in_K2m(wheel(5))
    assert fits_in_K2m(cycle(4))


def test_parse_pattern_round_trip():
    for text in ("wheel:5", "friendship:2", "matching:3", "g6:Cl"):
        assert str(parse_pattern(text)) == text
    assert parse_pattern("g6:Cl") == Generic(cycle(4))


@pytest.mark.parametrize("bad", ["wheel", "wheel:", "wheel:x", "wheel:2", "star:3", "matching:0", "g6:!!", "friendship:0"])
def test_parse_pattern_rejects(bad):
    with pytest.raises(PatternError):
        parse_pattern(bad)


def test_matching_against_brute_force_all_small(all_graphs_upto7):
    for g in all_graphs_upto7:
        assert matching_number(g) == oracles.brute_matching_number(g.n, g.edges())


def test_matching_against_brute_force_random_planar():
    rng = random.Random(21)
    for _ in range(300):
        g = random_planar(rng, rng.randint(1, 12), keep=rng.random())
        assert matching_number(g) == oracles.brute_matching_number(g.n, g.edges())


@given(graphs(min_n=1, max_n=5), graphs(min_n=1, max_n=8))
@settings(max_examples=300, deadline=None)
def test_containment_against_injections(f, g):
    assert contains_subgraph(g, f) == oracles.brute_contains(g.n, g.edges(), f.n, f.edges())


@given(graphs(min_n=1, max_n=5), graphs(min_n=2, max_n=8), st.data())
@settings(max_examples=150, deadline=None)
def test_containment_monotone_under_edge_addition(f, g, data):
    if not contains_subgraph(g, f):
        return
    missing = [(u, v) for u in range(g.n) for v in range(u + 1, g.n) if not g.has_edge(u, v)]
    if missing:
        u, v = data.draw(st.sampled_from(missing))
        assert contains_subgraph(g.with_edge(u, v), f)


@given(graphs(max_n=9), st.integers(1, 4))
@settings(max_examples=200, deadline=None)
def test_matching_dispatch_consistent(g, m):
    assert is_pattern_free(g, Matching(m)) == (not contains_subgraph(g, k_disjoint_edges(m)))


@given(
    graphs(min_n=4, max_n=10),
    st.sampled_from([Wheel(3), Wheel(4), Wheel(5), Wheel(6), Wheel(7), Friendship(1), Friendship(2), Friendship(3)]),
)
@settings(max_examples=400, deadline=None)
def test_neighbourhood_detectors_agree_with_search(g, p):
    assert is_pattern_free(g, p) == (not contains_subgraph(g, p.graph()))


def test_neighbourhood_detectors_on_random_planar_hosts():
    rng = random.Random(17)
    for _ in range(300):
        g = random_planar(rng, rng.randint(5, 11), keep=rng.uniform(0.5, 1.0))
        for k in range(3, 8):
            assert contains_wheel(g, k) == contains_subgraph(g, wheel(k))
        for k in range(1, 4):
            assert contains_friendship(g, k) == contains_subgraph(g, friendship(k))


def test_detectors_on_large_families():
    assert not contains_wheel(family_W(150, 7), 7)
    assert contains_wheel(family_W(150, 7), 6)
    assert not contains_friendship(family_F(150, 6), 6)
    assert contains_friendship(family_F(150, 6), 5)
    assert contains_wheel(family_W(5, 4), 4)


def test_friendship_and_wheel_hosts():
    assert contains_subgraph(wheel(7), friendship(3))
    assert not contains_subgraph(wheel(6), friendship(3))
    assert contains_subgraph(family_W(20, 7), friendship(2))
