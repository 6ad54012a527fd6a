import random

import pytest

import oracles
from folkman.arrow import arrows, is_maximal_in_family
from folkman.canon import canonical_g6
from folkman.extend import (
    ExtensionError,
    ExtensionTask,
    _extend_graph,
    add_independent_vertices,
    downward_closure,
    downward_closure_to_file,
    edge_addition_critical,
    extend_graph_naive,
    maximal_supergraphs,
    populate,
)
from folkman.gen import GenConstraints, iter_graphs
from folkman.graph import (
    Graph,
    clique_number,
    complete,
    cycle,
    delete_edge,
    has_clique,
    independence_number,
)
from folkman.graphset import GraphSet


def census(t, q, n):
    """Every graph of H(t; q; n) by exhaustive generation."""
    return GraphSet(g for g in iter_graphs(GenConstraints(n, max_clique=q)) if arrows(g, t))


def critical_oracle(g: Graph, q: int) -> bool:
    for u, v in g.non_edges():
        rows = list(g.adj)
        rows[u] |= 1 << v
        rows[v] |= 1 << u
        h = Graph._raw(g.n, rows)
        if not has_clique(h.adj, h.adj[u] & h.adj[v], q - 3):
            return False
    return True


def test_critical_examples():
    assert edge_addition_critical(complete(5), 6)
    assert edge_addition_critical(cycle(5), 3)
    assert edge_addition_critical(cycle(5), 4)
    assert not edge_addition_critical(cycle(5), 5)
    with pytest.raises(ExtensionError):
        edge_addition_critical(cycle(5), 2)


def test_critical_matches_oracle():
    rng = random.Random(2)
    for _ in range(400):
        g = oracles.random_graph(rng, rng.randint(2, 9), rng.uniform(0.4, 1.0))
        q = rng.randint(3, 6)
        assert edge_addition_critical(g, q) == critical_oracle(g, q)


@pytest.mark.parametrize("q,n,k", [(3, 5, 1), (3, 5, 2), (3, 5, 3), (4, 5, 2), (4, 6, 2), (5, 6, 2)])
def test_fast_extension_matches_naive(q, n, k):
    for h in iter_graphs(GenConstraints(n, max_clique=q)):
        if not edge_addition_critical(h, q):
            continue
        fast = sorted(canonical_g6(g) for g in _extend_graph(h, k, q))
        slow = sorted(canonical_g6(g) for g in extend_graph_naive(h, k, q))
        assert fast == slow, h.to_g6()


def test_extension_output_properties():
    base = GraphSet(g for g in census((3,), 4, 5) if edge_addition_critical(g, 4))
    out = add_independent_vertices(ExtensionTask(base, 2, (2, 3), 4, 7))
    assert len(out) > 0
    base_lines = set(base.lines())
    for g in out:
        assert clique_number(g) < 4 and arrows(g, (2, 3)) and is_maximal_in_family(g, 4)
        assert oracles.is_maximal_kq_free(g, 4)
        # some independent pair leaves a base graph behind
        found = False
        for u in range(g.n):
            for v in range(u + 1, g.n):
                if not (g.adj[u] >> v) & 1:
                    rest = g.induced(g.vertex_mask & ~(1 << u | 1 << v))
                    if canonical_g6(rest) in base_lines:
                        found = True
        assert found


def _maximal_census(t, q, n):
    return GraphSet(g for g in census(t, q, n) if is_maximal_in_family(g, q))


@pytest.mark.parametrize(
    "t_prev,t,q,n,k",
    [((2,), (2, 2), 3, 8, 3), ((2,), (2, 2), 3, 7, 2), ((3,), (2, 3), 4, 7, 2), ((3,), (2, 3), 4, 8, 3)],
)
def test_completeness_against_census(t_prev, t, q, n, k):
    base = GraphSet(g for g in census(t_prev, q, n - k) if edge_addition_critical(g, q))
    out = add_independent_vertices(ExtensionTask(base, k, t, q, n))
    truth = GraphSet(g for g in _maximal_census(t, q, n) if independence_number(g) >= k)
    assert out == truth


def test_maximal_triangle_free_base_alone_is_incomplete():
    # the extension needs every triangle-free base, not just the saturated ones
    all_base = GraphSet(g for g in census((2,), 3, 5))
    sat_base = GraphSet(g for g in all_base if is_maximal_in_family(g, 3))
    full = add_independent_vertices(ExtensionTask(all_base, 3, (2, 2), 3, 8))
    part = add_independent_vertices(ExtensionTask(sat_base, 3, (2, 2), 3, 8))
    assert set(part.lines()) < set(full.lines())


def test_extension_preconditions():
    with pytest.raises(ExtensionError):
        add_independent_vertices(ExtensionTask(GraphSet([cycle(6)]), 2, (2, 2), 5, 8))
    with pytest.raises(ExtensionError):
        ExtensionTask(GraphSet([cycle(5)]), 2, (2, 2), 3, 8)
    with pytest.raises(ExtensionError):
        ExtensionTask(GraphSet([cycle(5)]), 0, (2, 2), 3, 5)
    with pytest.raises(ValueError):
        ExtensionTask(GraphSet([cycle(5)]), 2, (2, 3), 3, 7)


def test_closure_examples():
    assert downward_closure(GraphSet([cycle(5)]), (2, 2), 3).lines() == [canonical_g6(cycle(5))]
    full = census((2, 2), 3, 8)
    maximal = GraphSet(g for g in full if is_maximal_in_family(g, 3))
    assert downward_closure(maximal, (2, 2), 3) == full
    crit = GraphSet(g for g in census((2, 3), 4, 7) if edge_addition_critical(g, 4))
    top = GraphSet(g for g in crit if is_maximal_in_family(g, 4))
    assert downward_closure(top, (2, 3), 4, critical=True) == crit


def test_closure_is_closed():
    rng = random.Random(1)
    full = census((2, 3), 4, 8)
    seed = GraphSet(rng.sample(list(full), min(5, len(full))))
    closed = downward_closure(seed, (2, 3), 4)
    lines = set(closed.lines())
    for g in closed:
        for e in g.edges():
            h = delete_edge(g, e)
            if arrows(h, (2, 3)):
                assert canonical_g6(h) in lines


def test_closure_to_file_matches(tmp_path):
    full = census((2, 2), 3, 7)
    seed = GraphSet(g for g in full if is_maximal_in_family(g, 3))
    path = tmp_path / "c.g6"
    count = downward_closure_to_file(seed, (2, 2), 3, path, spill_dir=tmp_path)
    assert count == len(full)
    assert path.read_text().split() == full.lines()


def test_determinism(tmp_path):
    base = GraphSet(g for g in census((3,), 4, 5) if edge_addition_critical(g, 4))
    a = add_independent_vertices(ExtensionTask(base, 2, (2, 3), 4, 7))
    b = add_independent_vertices(ExtensionTask(GraphSet(reversed(list(base))), 2, (2, 3), 4, 7))
    a.save(tmp_path / "a.g6")
    b.save(tmp_path / "b.g6")
    assert (tmp_path / "a.g6").read_bytes() == (tmp_path / "b.g6").read_bytes()


def test_parallel_merge_matches_serial():
    base = GraphSet(g for g in census((3,), 4, 5) if edge_addition_critical(g, 4))
    serial = add_independent_vertices(ExtensionTask(base, 2, (2, 3), 4, 7))
    parallel = add_independent_vertices(ExtensionTask(base, 2, (2, 3), 4, 7), jobs=2)
    assert serial == parallel
    full = census((2, 2), 3, 7)
    seed = GraphSet(g for g in full if is_maximal_in_family(g, 3))
    assert downward_closure(seed, (2, 2), 3, jobs=2) == full


def test_populate():
    c5 = GraphSet([cycle(5)])
    assert populate(c5, (2, 2), 3) == c5
    maximal = _maximal_census((2, 2), 3, 8)
    assert populate(maximal, (2, 2), 3) == maximal
    one = GraphSet([next(iter(maximal))])
    grown = populate(one, (2, 2), 3, rounds=3)
    assert set(grown.lines()) <= set(maximal.lines())
    assert len(grown) > 1


def test_maximal_supergraphs():
    out = maximal_supergraphs([Graph(5, [0] * 5)], 3)
    # maximal triangle-free graphs on 5 vertices: C5 and K_{1,4}, K_{2,3}
    assert len(out) == 3
    for g in out:
        assert oracles.is_maximal_kq_free(g, 3)
