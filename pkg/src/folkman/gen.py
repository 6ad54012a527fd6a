"""Exhaustive isomorph-free generation of small graphs by canonical augmentation.

Graphs grow one vertex at a time.  A child is kept only when its new vertex
lies in the canonically chosen deletion orbit (maximum degree, then maximum
neighbour-degree sum, ties broken by canonical label), and only one
neighbourhood per Aut(parent)-orbit is tried, so every isomorphism class is
produced exactly once.  Clique and independence bounds are hereditary and
prune partial graphs.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import combinations
from multiprocessing import Pool
from typing import Callable, Iterable, Iterator

from .arrow import ArrowTuple, arrows, normalize_tuple
from .canon import canonical_form
from .extend import edge_addition_critical
from .graph import (
    Graph,
    has_clique,
    has_independent_set,
    independence_number,
    max_clique_size,
)
from .graphset import GraphSet

log = logging.getLogger(__name__)

MAX_GEN_ORDER = 12


class GenError(ValueError):
    pass


@dataclass(frozen=True)
class GenConstraints:
    n: int
    max_clique: int | None = None  # keep graphs with omega < max_clique
    max_alpha: int | None = None  # keep graphs with alpha < max_alpha

    def __post_init__(self):
        if not 1 <= self.n <= MAX_GEN_ORDER:
            raise GenError(f"generation order must be in 1..{MAX_GEN_ORDER}, got {self.n}")
        for name in ("max_clique", "max_alpha"):
            b = getattr(self, name)
            if b is not None and b < 2:
                raise GenError(f"{name} bound must be >= 2, got {b}")

    def admits(self, g: Graph) -> bool:
        if self.max_clique is not None and max_clique_size(g.adj, g.vertex_mask) >= self.max_clique:
            return False
        if self.max_alpha is not None and independence_number(g) >= self.max_alpha:
            return False
        return True


def _apply(perm, mask):
    out = 0
    while mask:
        low = mask & -mask
        out |= 1 << perm[low.bit_length() - 1]
        mask ^= low
    return out


def _subset_reps(k, gens, min_size):
    sizes = range(min_size, k + 1)
    if not gens:
        for d in sizes:
            for combo in combinations(range(k), d):
                m = 0
                for v in combo:
                    m |= 1 << v
                yield m
        return
    seen = set()
    for d in sizes:
        masks = []
        for combo in combinations(range(k), d):
            m = 0
            for v in combo:
                m |= 1 << v
            masks.append(m)
        masks.sort()
        for m in masks:
            if m in seen:
                continue
            orbit = {m}
            frontier = [m]
            while frontier:
                x = frontier.pop()
                for g in gens:
                    y = _apply(g, x)
                    if y not in orbit:
                        orbit.add(y)
                        frontier.append(y)
            seen |= orbit
            yield m


def _accept(child):
    """Parent test: is the last vertex in the canonical deletion orbit?"""
    n = child.n
    adj = child.adj
    new = n - 1
    degs = [row.bit_count() for row in adj]
    top = max(degs)
    if degs[new] != top:
        return False, None
    tied = [v for v in range(n) if degs[v] == top]
    if len(tied) > 1:
        score = {}
        for v in tied:
            s = 0
            row = adj[v]
            while row:
                low = row & -row
                s += degs[low.bit_length() - 1]
                row ^= low
            score[v] = s
        best = max(score.values())
        if score[new] != best:
            return False, None
        tied = [v for v in tied if score[v] == best]
    if len(tied) == 1:
        return True, None
    cf = canonical_form(child)
    chosen = min(tied, key=lambda v: cf.canon_perm[v])
    orbits = cf.orbits()
    return orbits[new] == orbits[chosen], cf


def _children(g, gens, c):
    k = g.n
    adj = g.adj
    full = g.vertex_mask
    maxdeg = max((row.bit_count() for row in adj), default=0)
    for s in _subset_reps(k, gens, maxdeg):
        if c.max_clique is not None and has_clique(adj, s, c.max_clique - 1):
            continue
        if c.max_alpha is not None and has_independent_set(adj, full & ~s, c.max_alpha - 1):
            continue
        b = 1 << k
        rows = [row | b if (s >> v) & 1 else row for v, row in enumerate(adj)]
        rows.append(s)
        child = Graph._raw(k + 1, rows)
        ok, cf = _accept(child)
        if ok:
            yield child, cf


def _grow(g, gens, c):
    if g.n == c.n:
        yield g
        return
    last = g.n + 1 == c.n
    for child, cf in _children(g, gens, c):
        if last:
            yield child
        else:
            if cf is None:
                cf = canonical_form(child)
            yield from _grow(child, cf.generators, c)


def _frontier(c, depth):
    """Graphs of order ``depth`` (with their generators) that seed subtrees."""
    level = [(Graph._raw(1, [0]), ())]
    sub = GenConstraints(depth, c.max_clique, c.max_alpha)
    for _ in range(depth - 1):
        nxt = []
        for g, gens in level:
            for child, cf in _children(g, gens, sub):
                if cf is None:
                    cf = canonical_form(child)
                nxt.append((child, cf.generators))
        level = nxt
    return level


def _grow_list(args):
    g, gens, c = args
    return list(_grow(g, gens, c))


def iter_graphs(c: GenConstraints, jobs: int = 1) -> Iterator[Graph]:
    """One graph per isomorphism class satisfying ``c`` (not canonically labelled)."""
    if c.n == 1:
        yield Graph._raw(1, [0])
        return
    if jobs <= 1 or c.n <= 6:
        yield from _grow(Graph._raw(1, [0]), (), c)
        return
    seeds = _frontier(c, c.n - 3)
    with Pool(jobs) as pool:
        for batch in pool.imap(_grow_list, [(g, gens, c) for g, gens in seeds], chunksize=4):
            yield from batch


def generate_all(c: GenConstraints, jobs: int = 1) -> GraphSet:
    return GraphSet(iter_graphs(c, jobs))


def count_graphs(c: GenConstraints, jobs: int = 1) -> int:
    return sum(1 for _ in iter_graphs(c, jobs))


# -- set filters ---------------------------------------------------------------


def make_predicate(spec: str) -> Callable[[Graph], bool]:
    """Parse ``omega=k``, ``omega<q``, ``alpha<p``, ``arrows:a,b,c`` or ``critical:q``."""
    s = spec.replace(" ", "")
    try:
        if s.startswith("omega="):
            k = int(s[6:])
            return lambda g: max_clique_size(g.adj, g.vertex_mask) == k
        if s.startswith("omega<"):
            q = int(s[6:])
            return lambda g: max_clique_size(g.adj, g.vertex_mask) < q
        if s.startswith("alpha<"):
            p = int(s[6:])
            return lambda g: independence_number(g) < p
        if s.startswith("arrows:"):
            t = normalize_tuple(s[7:])
            return lambda g: arrows(g, t)
        if s.startswith("critical:"):
            q = int(s[9:])
            return lambda g: edge_addition_critical(g, q)
    except ValueError as exc:
        raise GenError(f"bad predicate {spec!r}: {exc}") from None
    raise GenError(f"unknown predicate {spec!r}")


def filter_set(graphs: Iterable[Graph], predicate):
    """Members satisfying ``predicate`` (a callable or a predicate string), in order.

    A GraphSet input gives a GraphSet back; any other iterable gives a list.
    """
    if isinstance(predicate, str):
        predicate = make_predicate(predicate)
    if isinstance(graphs, GraphSet):
        out = GraphSet()
        for line, g in zip(graphs.lines(), graphs):
            if predicate(g):
                out.add_canonical(line, g)
        return out
    return [g for g in graphs if predicate(g)]


def ramsey_graphs(p: int, q: int, n: int, jobs: int = 1) -> GraphSet:
    """R(p, q; n): graphs of order n with alpha < p and omega < q."""
    return generate_all(GenConstraints(n, max_clique=q, max_alpha=p), jobs)


def family_members(t: ArrowTuple, q: int, n: int, jobs: int = 1) -> Iterator[Graph]:
    """Every graph of H(t; q; n), one per class, by exhaustive generation."""
    t = normalize_tuple(t)
    for g in iter_graphs(GenConstraints(n, max_clique=q), jobs):
        if arrows(g, t):
            yield g
