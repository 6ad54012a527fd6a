import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from folkman.graph import Graph, clique_number, complete, cycle, has_clique
from folkman.kfree import maximal_kfree_subsets


def test_examples():
    assert maximal_kfree_subsets(complete(4), 2).sets == (1, 2, 4, 8)
    c5 = maximal_kfree_subsets(cycle(5), 2).sets
    assert len(c5) == 5 and all(s.bit_count() == 2 for s in c5)
    k5 = maximal_kfree_subsets(complete(5), 3).sets
    assert len(k5) == 10 and all(s.bit_count() == 2 for s in k5)
    assert list(k5) == oracles.maximal_kfree(complete(5), 3)


def test_bad_t():
    with pytest.raises(ValueError):
        maximal_kfree_subsets(cycle(5), 1)


def test_independent_sets_match_networkx():
    rng = random.Random(6)
    for _ in range(100):
        g = oracles.random_graph(rng, rng.randint(1, 12))
        comp = nx.complement(_nx(g))
        expected = sorted(sum(1 << v for v in c) for c in nx.find_cliques(comp))
        assert list(maximal_kfree_subsets(g, 2).sets) == expected


def _nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def test_all_small_graphs_brute_force():
    for h in nx.graph_atlas_g()[1:]:
        if h.number_of_nodes() > 6:
            break
        g = Graph.from_edges(h.number_of_nodes(), h.edges())
        for t in (2, 3, 4):
            assert list(maximal_kfree_subsets(g, t).sets) == oracles.maximal_kfree(g, t)


@settings(max_examples=120, deadline=None)
@given(st.integers(1, 11), st.integers(2, 5), st.randoms(use_true_random=False))
def test_property_family_invariants(n, t, rng):
    g = oracles.random_graph(rng, n)
    fam = maximal_kfree_subsets(g, t).sets
    assert len(set(fam)) == len(fam)
    covered = 0
    for s in fam:
        covered |= s
        assert not has_clique(g.adj, s, t)
        for v in range(n):
            if not (s >> v) & 1:
                assert has_clique(g.adj, s | 1 << v, t)
    assert covered == g.vertex_mask
    if t > clique_number(g):
        assert fam == (g.vertex_mask,)
