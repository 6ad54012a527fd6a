"""Brute-force reference implementations, deliberately naive and independent
of the package's search code."""

from __future__ import annotations

import random
from itertools import combinations, permutations, product

from folkman.graph import Graph


def edge_set(g: Graph) -> set[frozenset]:
    return {frozenset((u, v)) for u in range(g.n) for v in range(u + 1, g.n) if (g.adj[u] >> v) & 1}


def is_clique(g: Graph, vs) -> bool:
    return all((g.adj[u] >> v) & 1 for u, v in combinations(vs, 2))


def is_independent(g: Graph, vs) -> bool:
    return not any((g.adj[u] >> v) & 1 for u, v in combinations(vs, 2))


def subsets(n: int):
    for mask in range(1 << n):
        yield [v for v in range(n) if (mask >> v) & 1]


def clique_number(g: Graph) -> int:
    return max(len(s) for s in subsets(g.n) if is_clique(g, s))


def independence_number(g: Graph) -> int:
    return max(len(s) for s in subsets(g.n) if is_independent(g, s))


def has_clique_within(g: Graph, t: int, within: int) -> bool:
    vs = [v for v in range(g.n) if (within >> v) & 1]
    return any(is_clique(g, c) for c in combinations(vs, t)) if t > 0 else True


def chromatic_number(g: Graph) -> int:
    if g.n == 0:
        return 0
    for k in range(1, g.n + 1):
        for colors in product(range(k), repeat=g.n):
            if all(colors[u] != colors[v] for u, v in map(tuple, edge_set(g))):
                return k
    return g.n


def arrows(g: Graph, parts) -> bool:
    """Every colouring in len(parts) colours has colour i containing a parts[i]-clique."""
    s = len(parts)
    for colors in product(range(s), repeat=g.n):
        free = True
        for i, a in enumerate(parts):
            cls = [v for v in range(g.n) if colors[v] == i]
            if any(is_clique(g, c) for c in combinations(cls, a)):
                free = False
                break
        if free:
            return False
    return True


def aut_order(g: Graph) -> int:
    edges = edge_set(g)
    count = 0
    for perm in permutations(range(g.n)):
        if all(frozenset((perm[u], perm[v])) in edges for u, v in map(tuple, edges)):
            count += 1
    return count


def maximal_kfree(g: Graph, t: int) -> list[int]:
    free = []
    for mask in range(1 << g.n):
        if not has_clique_within(g, t, mask):
            free.append(mask)
    fs = set(free)
    out = []
    for mask in free:
        if all((mask >> v) & 1 or (mask | 1 << v) not in fs for v in range(g.n)):
            out.append(mask)
    return sorted(out)


def brute_canonical_string(g: Graph) -> str:
    """Lexicographically smallest adjacency string over all n! relabellings."""
    best = None
    for perm in permutations(range(g.n)):
        inv = [0] * g.n
        for i, v in enumerate(perm):
            inv[v] = i
        bits = "".join(
            "1" if (g.adj[perm[i]] >> perm[j]) & 1 else "0" for j in range(g.n) for i in range(j)
        )
        if best is None or bits < best:
            best = bits
    return best


def random_graph(rng: random.Random, n: int, p: float | None = None) -> Graph:
    if p is None:
        p = rng.random()
    adj = [0] * n
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                adj[u] |= 1 << v
                adj[v] |= 1 << u
    return Graph(n, adj)


def relabel_random(rng: random.Random, g: Graph) -> Graph:
    perm = list(range(g.n))
    rng.shuffle(perm)
    return g.relabel(perm)


def labelled_graphs(n: int):
    pairs = list(combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        adj = [0] * n
        for i, (u, v) in enumerate(pairs):
            if (mask >> i) & 1:
                adj[u] |= 1 << v
                adj[v] |= 1 << u
        yield Graph._raw(n, adj)


def is_maximal_kq_free(g: Graph, q: int) -> bool:
    """omega < q and every added edge creates a q-clique (direct construction)."""
    if clique_number(g) >= q:
        return False
    for u in range(g.n):
        for v in range(u + 1, g.n):
            if not (g.adj[u] >> v) & 1:
                rows = list(g.adj)
                rows[u] |= 1 << v
                rows[v] |= 1 << u
                if clique_number(Graph._raw(g.n, rows)) < q:
                    return False
    return True
