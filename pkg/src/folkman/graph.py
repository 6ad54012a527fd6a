"""Undirected simple graphs on at most 64 vertices with bitset adjacency rows.

Vertex ``v`` is adjacent to ``u`` iff bit ``u`` of ``adj[v]`` is set.  Graph
values are immutable; every operation returns a new graph.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Sequence

MAX_VERTICES = 64


class GraphError(ValueError):
    """Invalid graph construction or an operation on a missing vertex/edge."""


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def bits_of(mask: int) -> list[int]:
    return list(iter_bits(mask))


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


class Graph:
    __slots__ = ("n", "adj", "_hash")

    def __init__(self, n: int, adj: Sequence[int]):
        if not 0 <= n <= MAX_VERTICES:
            raise GraphError(f"vertex count {n} outside 0..{MAX_VERTICES}")
        if len(adj) != n:
            raise GraphError("adjacency row count does not match n")
        full = (1 << n) - 1
        for v, row in enumerate(adj):
            if row & ~full:
                raise GraphError(f"row {v} references a vertex >= n")
            if (row >> v) & 1:
                raise GraphError(f"loop at vertex {v}")
            for u in iter_bits(row):
                if not (adj[u] >> v) & 1:
                    raise GraphError(f"asymmetric adjacency between {v} and {u}")
        self.n = n
        self.adj = tuple(adj)
        self._hash = None

    @classmethod
    def _raw(cls, n: int, adj: Sequence[int]) -> "Graph":
        # Trusted constructor for hot loops; the caller guarantees validity.
        g = object.__new__(cls)
        g.n = n
        g.adj = tuple(adj)
        g._hash = None
        return g

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        adj = [0] * n
        for u, v in edges:
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, adj)

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.adj == other.adj

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, self.adj))
        return self._hash

    def __repr__(self):
        return f"Graph(n={self.n}, edges={self.edge_count})"

    @property
    def vertex_mask(self) -> int:
        return (1 << self.n) - 1

    @property
    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [row.bit_count() for row in self.adj]

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.adj[u] >> v) & 1)

    def neighbors(self, v: int) -> list[int]:
        return bits_of(self.adj[v])

    def edges(self) -> list[tuple[int, int]]:
        """Edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        out = []
        for u, row in enumerate(self.adj):
            for v in iter_bits(row >> (u + 1)):
                out.append((u, u + 1 + v))
        return out

    def non_edges(self) -> list[tuple[int, int]]:
        full = self.vertex_mask
        out = []
        for u, row in enumerate(self.adj):
            for v in iter_bits((~row & full) >> (u + 1)):
                out.append((u, u + 1 + v))
        return out

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Return the graph in which old vertex ``v`` becomes ``perm[v]``."""
        adj = [0] * self.n
        for v, row in enumerate(self.adj):
            new = 0
            for u in iter_bits(row):
                new |= 1 << perm[u]
            adj[perm[v]] = new
        return Graph._raw(self.n, adj)

    def induced(self, mask: int) -> "Graph":
        """Induced subgraph on ``mask``, reindexed densely in increasing order."""
        verts = bits_of(mask)
        index = {v: i for i, v in enumerate(verts)}
        adj = []
        for v in verts:
            row = 0
            for u in iter_bits(self.adj[v] & mask):
                row |= 1 << index[u]
            adj.append(row)
        return Graph._raw(len(verts), adj)

    def to_g6(self) -> str:
        from .graph6 import encode

        return encode(self)


@dataclass(frozen=True)
class GraphStats:
    edges: int
    min_degree: int
    max_degree: int
    alpha: int
    chi: int
    aut_order: int


# -- constructions -----------------------------------------------------------


def empty(n: int) -> Graph:
    if not 1 <= n <= MAX_VERTICES:
        raise GraphError(f"n={n} outside 1..{MAX_VERTICES}")
    return Graph._raw(n, [0] * n)


def complete(n: int) -> Graph:
    if not 1 <= n <= MAX_VERTICES:
        raise GraphError(f"n={n} outside 1..{MAX_VERTICES}")
    full = (1 << n) - 1
    return Graph._raw(n, [full ^ (1 << v) for v in range(n)])


def cycle(n: int) -> Graph:
    if not 3 <= n <= MAX_VERTICES:
        raise GraphError(f"cycle needs 3..{MAX_VERTICES} vertices, got {n}")
    return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def path(n: int) -> Graph:
    if not 1 <= n <= MAX_VERTICES:
        raise GraphError(f"n={n} outside 1..{MAX_VERTICES}")
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def complement(g: Graph) -> Graph:
    full = g.vertex_mask
    return Graph._raw(g.n, [~row & full & ~(1 << v) for v, row in enumerate(g.adj)])


def disjoint_union(g1: Graph, g2: Graph) -> Graph:
    n = g1.n + g2.n
    if n > MAX_VERTICES:
        raise GraphError(f"union would have {n} > {MAX_VERTICES} vertices")
    return Graph._raw(n, list(g1.adj) + [row << g1.n for row in g2.adj])


def join(g1: Graph, g2: Graph) -> Graph:
    """Disjoint union of ``g1`` and ``g2`` plus every edge between them."""
    n = g1.n + g2.n
    if n > MAX_VERTICES:
        raise GraphError(f"join would have {n} > {MAX_VERTICES} vertices")
    low = g1.vertex_mask
    high = g2.vertex_mask << g1.n
    adj = [row | high for row in g1.adj] + [(row << g1.n) | low for row in g2.adj]
    return Graph._raw(n, adj)


def delete_vertex(g: Graph, v: int) -> Graph:
    if not 0 <= v < g.n:
        raise GraphError(f"vertex {v} not in graph of order {g.n}")
    return g.induced(g.vertex_mask ^ (1 << v))


def delete_edge(g: Graph, e: tuple[int, int]) -> Graph:
    u, v = e
    if not (0 <= u < g.n and 0 <= v < g.n) or not g.has_edge(u, v):
        raise GraphError(f"edge {e} not present")
    adj = list(g.adj)
    adj[u] ^= 1 << v
    adj[v] ^= 1 << u
    return Graph._raw(g.n, adj)


def add_edge(g: Graph, e: tuple[int, int]) -> Graph:
    u, v = e
    if u == v or not (0 <= u < g.n and 0 <= v < g.n):
        raise GraphError(f"cannot add edge {e}")
    if g.has_edge(u, v):
        raise GraphError(f"edge {e} already present")
    adj = list(g.adj)
    adj[u] |= 1 << v
    adj[v] |= 1 << u
    return Graph._raw(g.n, adj)


def add_vertex(g: Graph, neighbors: int) -> Graph:
    """Append vertex ``g.n`` adjacent to the vertex bitset ``neighbors``."""
    if g.n + 1 > MAX_VERTICES:
        raise GraphError("vertex cap exceeded")
    b = 1 << g.n
    adj = [row | b if (neighbors >> v) & 1 else row for v, row in enumerate(g.adj)]
    adj.append(neighbors)
    return Graph._raw(g.n + 1, adj)


# -- cliques and independent sets --------------------------------------------


def has_clique(adj: Sequence[int], cand: int, t: int) -> bool:
    """True iff the vertex set ``cand`` contains a ``t``-clique."""
    if t <= 0:
        return True
    if t == 1:
        return cand != 0
    if cand.bit_count() < t:
        return False
    if t == 2:
        c = cand
        while c:
            low = c & -c
            if adj[low.bit_length() - 1] & cand:
                return True
            c ^= low
        return False
    while cand:
        if cand.bit_count() < t:
            return False
        low = cand & -cand
        cand ^= low
        sub = adj[low.bit_length() - 1] & cand
        if sub.bit_count() >= t - 1 and has_clique(adj, sub, t - 1):
            return True
    return False


def has_clique_at_least(g: Graph, t: int, within: int | None = None) -> bool:
    if within is None:
        within = g.vertex_mask
    if within & ~g.vertex_mask:
        raise GraphError("`within` is not a subset of V(g)")
    return has_clique(g.adj, within, t)


def find_clique(adj: Sequence[int], cand: int, t: int) -> int | None:
    """Return a ``t``-clique inside ``cand`` as a bitset, or None."""
    if t <= 0:
        return 0
    while cand and cand.bit_count() >= t:
        low = cand & -cand
        cand ^= low
        if t == 1:
            return low
        sub = find_clique(adj, adj[low.bit_length() - 1] & cand, t - 1)
        if sub is not None:
            return sub | low
    return None


def _greedy_color_bound(adj, cand):
    # Greedy sequential colouring of `cand`; returns (order, colour_of_prefix),
    # used as the upper bound in the max-clique search.
    order = []
    bounds = []
    color = 0
    rest = cand
    while rest:
        color += 1
        avail = rest
        while avail:
            low = avail & -avail
            v = low.bit_length() - 1
            rest ^= low
            avail &= ~adj[v] & ~low
            order.append(v)
            bounds.append(color)
    return order, bounds


def max_clique_size(adj: Sequence[int], cand: int, lower: int = 0) -> int:
    """Size of a maximum clique inside ``cand`` (at least ``lower``)."""
    best = [lower]

    def expand(cand, size):
        order, bounds = _greedy_color_bound(adj, cand)
        for i in range(len(order) - 1, -1, -1):
            if size + bounds[i] <= best[0]:
                return
            v = order[i]
            sub = cand & adj[v]
            if sub:
                expand(sub, size + 1)
            elif size + 1 > best[0]:
                best[0] = size + 1
            cand &= ~(1 << v)

    if cand:
        expand(cand, 0)
    return best[0]


def clique_number(g: Graph) -> int:
    return max_clique_size(g.adj, g.vertex_mask)


def max_independent_size(adj: Sequence[int], cand: int) -> int:
    """Size of a maximum independent set inside ``cand``.

    Branches directly on non-neighbourhoods rather than on the complement, so
    it serves as an independent check of ``clique_number``.
    """

    def solve(cand):
        if not cand:
            return 0
        # vertices with no neighbours inside cand always belong to some optimum
        forced = 0
        c = cand
        while c:
            low = c & -c
            if not adj[low.bit_length() - 1] & cand:
                forced |= low
            c ^= low
        if forced:
            return forced.bit_count() + solve(cand & ~forced)
        # branch on a vertex of maximum degree inside cand
        best_v, best_d = -1, -1
        c = cand
        while c:
            low = c & -c
            v = low.bit_length() - 1
            d = (adj[v] & cand).bit_count()
            if d > best_d:
                best_v, best_d = v, d
            c ^= low
        bit = 1 << best_v
        with_v = 1 + solve(cand & ~adj[best_v] & ~bit)
        if cand.bit_count() - 1 <= with_v:
            return with_v
        return max(with_v, solve(cand & ~bit))

    return solve(cand)


def independence_number(g: Graph) -> int:
    return max_independent_size(g.adj, g.vertex_mask)


def has_independent_set(adj: Sequence[int], cand: int, t: int) -> bool:
    if t <= 0:
        return True
    if cand.bit_count() < t:
        return False
    if t == 1:
        return True
    while cand and cand.bit_count() >= t:
        low = cand & -cand
        cand ^= low
        if has_independent_set(adj, cand & ~adj[low.bit_length() - 1], t - 1):
            return True
    return False


# -- colouring ----------------------------------------------------------------


def dsatur_coloring(g: Graph) -> list[int]:
    """Greedy DSATUR colouring; colours are 0-based."""
    n = g.n
    adj = g.adj
    colors = [-1] * n
    sat = [0] * n
    uncolored = g.vertex_mask
    while uncolored:
        best, key = -1, None
        for v in iter_bits(uncolored):
            k = (sat[v].bit_count(), (adj[v] & uncolored).bit_count())
            if key is None or k > key:
                best, key = v, k
        forbidden = sat[best]
        c = 0
        while (forbidden >> c) & 1:
            c += 1
        colors[best] = c
        uncolored &= ~(1 << best)
        for u in iter_bits(adj[best]):
            sat[u] |= 1 << c
    return colors


def chromatic_coloring(g: Graph) -> list[int]:
    """An optimal proper colouring found by DSATUR branch and bound.

    The search is seeded with a maximum clique (lower bound, precoloured) and
    the greedy DSATUR colouring (upper bound).
    """
    n = g.n
    if n == 0:
        return []
    adj = g.adj
    greedy = dsatur_coloring(g)
    ub = max(greedy) + 1
    clique = find_clique(adj, g.vertex_mask, max_clique_size(adj, g.vertex_mask))
    lb = clique.bit_count()
    if lb == ub:
        return greedy

    best = [ub, greedy]
    colors = [-1] * n
    sat = [0] * n
    uncolored = g.vertex_mask
    for c, v in enumerate(iter_bits(clique)):
        colors[v] = c
        uncolored &= ~(1 << v)
        for u in iter_bits(adj[v]):
            sat[u] |= 1 << c

    def search(uncolored, used):
        if not uncolored:
            best[0] = used
            best[1] = colors[:]
            return
        pick, key = -1, None
        for v in iter_bits(uncolored):
            k = (sat[v].bit_count(), (adj[v] & uncolored).bit_count())
            if key is None or k > key:
                pick, key = v, k
        rest = uncolored & ~(1 << pick)
        limit = min(used + 1, best[0] - 1)
        for c in range(limit):
            if (sat[pick] >> c) & 1:
                continue
            colors[pick] = c
            touched = []
            for u in iter_bits(adj[pick] & rest):
                if not (sat[u] >> c) & 1:
                    sat[u] |= 1 << c
                    touched.append(u)
            search(rest, max(used, c + 1))
            for u in touched:
                sat[u] &= ~(1 << c)
            colors[pick] = -1
            if best[0] == lb:
                return

    search(uncolored, lb)
    return best[1]


def chromatic_number(g: Graph) -> int:
    if g.n == 0:
        return 0
    return max(chromatic_coloring(g)) + 1


def is_proper_coloring(g: Graph, colors: Sequence[int]) -> bool:
    return all(colors[u] != colors[v] for u, v in g.edges())


def stats(g: Graph) -> GraphStats:
    from .canon import canonical_form

    degs = g.degrees()
    return GraphStats(
        edges=g.edge_count,
        min_degree=min(degs),
        max_degree=max(degs),
        alpha=independence_number(g),
        chi=chromatic_number(g),
        aut_order=canonical_form(g).aut_order,
    )


def all_cliques(adj: Sequence[int], cand: int, t: int) -> list[int]:
    """Every ``t``-clique inside ``cand`` as a bitset (unordered)."""
    out = []

    def rec(cand, chosen, t):
        if t == 0:
            out.append(chosen)
            return
        while cand and cand.bit_count() >= t:
            low = cand & -cand
            cand ^= low
            rec(adj[low.bit_length() - 1] & cand, chosen | low, t - 1)

    rec(cand, 0, t)
    return out


def vertex_pairs(mask: int) -> Iterator[tuple[int, int]]:
    return combinations(bits_of(mask), 2)
