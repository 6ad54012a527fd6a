"""Maximal K_t-free vertex subsets.

These are the candidate neighbourhoods of an independent vertex added to a
graph without creating a (t+1)-clique.  For t = 2 they are the maximal
independent sets.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import Graph, has_clique, iter_bits


@dataclass(frozen=True)
class MaximalFreeFamily:
    t: int
    sets: tuple[int, ...]

    def __len__(self):
        return len(self.sets)

    def __iter__(self):
        return iter(self.sets)


def _maximal_independent(adj, full):
    # Bron-Kerbosch with pivoting on the complement graph.
    out = []
    non = [~row & full & ~(1 << v) for v, row in enumerate(adj)]

    def bk(r, p, x):
        if not p and not x:
            out.append(r)
            return
        px = p | x
        pivot, best = -1, -1
        for u in iter_bits(px):
            c = (non[u] & p).bit_count()
            if c > best:
                pivot, best = u, c
        for v in iter_bits(p & ~non[pivot]):
            b = 1 << v
            bk(r | b, p & non[v], x & non[v])
            p &= ~b
            x |= b

    bk(0, full, 0)
    return out


def _maximal_kfree(adj, n, t):
    out = []
    need = t - 1

    def rec(i, chosen, excluded):
        if i == n:
            # an excluded vertex must close a t-clique with the chosen set
            for x in iter_bits(excluded):
                if not has_clique(adj, adj[x] & chosen, need):
                    return
            out.append(chosen)
            return
        b = 1 << i
        future = ((1 << n) - 1) & ~((1 << (i + 1)) - 1)
        blocked = has_clique(adj, adj[i] & chosen, need)
        if not blocked:
            rec(i + 1, chosen | b, excluded)
        # excluding i is only useful if i can still become blocked
        if blocked or has_clique(adj, adj[i] & (chosen | future), need):
            rec(i + 1, chosen, excluded | b)

    rec(0, 0, 0)
    return out


def maximal_kfree_subsets(h: Graph, t: int) -> MaximalFreeFamily:
    """All maximal subsets of V(h) that induce no ``t``-clique.

    Sets are vertex bitsets returned in increasing integer order.
    """
    if t < 2:
        raise ValueError(f"clique bound t must be >= 2, got {t}")
    if h.n == 0:
        return MaximalFreeFamily(t, (0,))
    if t == 2:
        sets = _maximal_independent(h.adj, h.vertex_mask)
    else:
        sets = _maximal_kfree(h.adj, h.n, t)
    return MaximalFreeFamily(t, tuple(sorted(sets)))
