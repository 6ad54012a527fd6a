"""Generation of maximal graphs by adding independent vertices, plus closures.

A maximal graph G of H(2_r, ..., q; n) that has k independent vertices comes
from a smaller graph H = G - {v_1..v_k} whose every added edge already closes
a (q-1)-clique, with each N(v_i) a maximal K_{q-1}-free subset of V(H).  So the
maximal graphs with independence number >= k are exactly the extensions of
such H by k-multisets of those subsets that pass the saturation test.
"""

from __future__ import annotations

import heapq
import logging
import os
import tempfile
from dataclasses import dataclass
from itertools import combinations_with_replacement
from multiprocessing import Pool
from typing import Callable, Iterable, Iterator

from .arrow import ArrowTuple, arrows, check_family, is_maximal_in_family, normalize_tuple
from .canon import canonical_graph
from .graph import Graph, has_clique, max_clique_size
from .graph6 import decode, encode
from .graphset import GraphSet
from .kfree import maximal_kfree_subsets

log = logging.getLogger(__name__)


class ExtensionError(ValueError):
    pass


def edge_addition_critical(g: Graph, q: int) -> bool:
    """Every added edge uv closes a (q-1)-clique through u and v."""
    if q < 3:
        raise ExtensionError(f"q must be >= 3, got {q}")
    adj = g.adj
    need = q - 3
    for u in range(g.n):
        row = adj[u]
        missing = ~row & ((1 << g.n) - 1) & ~((2 << u) - 1)
        while missing:
            low = missing & -missing
            v = low.bit_length() - 1
            if not has_clique(adj, row & adj[v], need):
                return False
            missing ^= low
    return True


@dataclass(frozen=True)
class ExtensionTask:
    base: GraphSet
    k: int
    target_tuple: ArrowTuple
    q: int
    n_target: int

    def __post_init__(self):
        object.__setattr__(self, "target_tuple", normalize_tuple(self.target_tuple))
        check_family(self.target_tuple, self.q)
        if self.k < 1:
            raise ExtensionError(f"k must be >= 1, got {self.k}")
        for h in self.base:
            if h.n + self.k != self.n_target:
                raise ExtensionError(
                    f"base graph of order {h.n} plus {self.k} vertices is not {self.n_target}"
                )


def _extend_graph(h: Graph, k: int, q: int) -> Iterator[Graph]:
    """Saturated extensions of ``h`` by k independent vertices (unchecked for arrowing)."""
    n = h.n
    adj = h.adj
    family = maximal_kfree_subsets(h, q - 1).sets
    if not family:
        return
    # non-edges of h lacking a K_{q-2} in their common neighbourhood
    open_pairs = []
    for u in range(n):
        for v in range(u + 1, n):
            if not (adj[u] >> v) & 1:
                common = adj[u] & adj[v]
                if not has_clique(adj, common, q - 2):
                    open_pairs.append((u, v, common))
    full_cover = (1 << len(open_pairs)) - 1
    cover = []
    for m in family:
        c = 0
        for i, (u, v, common) in enumerate(open_pairs):
            if (m >> u) & 1 and (m >> v) & 1 and has_clique(adj, common & m, q - 3):
                c |= 1 << i
        cover.append(c)
    t = len(family)
    # two added vertices are non-adjacent, so their shared set needs a K_{q-2}
    pair_ok: dict[tuple[int, int], bool] = {}

    def compatible(i, j):
        key = (i, j)
        r = pair_ok.get(key)
        if r is None:
            r = has_clique(adj, family[i] & family[j], q - 2)
            pair_ok[key] = r
        return r

    chosen: list[int] = []

    def rec(start, covered):
        if len(chosen) == k:
            if covered == full_cover:
                yield tuple(chosen)
            return
        for i in range(start, t):
            if not compatible(i, i):
                continue
            if any(not compatible(j, i) for j in chosen):
                continue
            chosen.append(i)
            yield from rec(i, covered | cover[i])
            chosen.pop()

    base_rows = list(adj)
    for combo in rec(0, 0):
        rows = list(base_rows)
        for j, i in enumerate(combo):
            m = family[i]
            b = 1 << (n + j)
            x = m
            while x:
                low = x & -x
                rows[low.bit_length() - 1] |= b
                x ^= low
            rows.append(m)
        yield Graph._raw(n + k, rows)


def extend_graph_naive(h: Graph, k: int, q: int) -> Iterator[Graph]:
    """Reference version of the saturated extension: build every multiset and test it."""
    family = maximal_kfree_subsets(h, q - 1).sets
    n = h.n
    for combo in combinations_with_replacement(range(len(family)), k):
        rows = list(h.adj) + [0] * k
        for j, i in enumerate(combo):
            for x in range(n):
                if (family[i] >> x) & 1:
                    rows[x] |= 1 << (n + j)
                    rows[n + j] |= 1 << x
        g = Graph._raw(n + k, rows)
        if max_clique_size(g.adj, g.vertex_mask) < q and is_maximal_in_family(g, q):
            yield g


def _extension_lines(args):
    line, k, q = args
    h = decode(line)
    return [encode(canonical_graph(g)) for g in _extend_graph(h, k, q)]


def add_independent_vertices(
    task: ExtensionTask,
    jobs: int = 1,
    check_base: bool = True,
    progress: Callable[[int, int], None] | None = None,
) -> GraphSet:
    """Maximal graphs of H(target; q; n_target) containing k independent vertices
    whose removal leaves a graph of ``task.base``."""
    q, k, t = task.q, task.k, task.target_tuple
    if check_base:
        for h in task.base:
            if not edge_addition_critical(h, q):
                raise ExtensionError(
                    f"base graph {h.to_g6()} is not edge-addition-critical for q={q}"
                )
    base_lines = [h.to_g6() for h in task.base]
    args = [(line, k, q) for line in base_lines]
    seen: set[str] = set()
    out = GraphSet()
    if jobs > 1 and len(args) > 1:
        pool = Pool(jobs)
        results = pool.imap_unordered(_extension_lines, args, chunksize=8)
    else:
        pool = None
        results = map(_extension_lines, args)
    try:
        for done, lines in enumerate(results, 1):
            for line in lines:
                if line in seen:
                    continue
                seen.add(line)
                g = decode(line)
                if arrows(g, t):
                    out.add_canonical(line, g)
            if progress:
                progress(done, len(args))
    finally:
        if pool is not None:
            pool.close()
            pool.join()
    log.info("extension: %d candidates, %d in family", len(seen), len(out))
    return out


# -- downward closure ------------------------------------------------------------


def _member_test(t: ArrowTuple, q: int, critical: bool):
    def member(g: Graph) -> bool:
        if critical and not edge_addition_critical(g, q):
            return False
        return arrows(g, t)

    return member


def _deletions(g: Graph) -> Iterator[Graph]:
    adj = g.adj
    for u in range(g.n):
        row = adj[u] >> (u + 1)
        v = u + 1
        while row:
            if row & 1:
                rows = list(adj)
                rows[u] ^= 1 << v
                rows[v] ^= 1 << u
                yield Graph._raw(g.n, rows)
            row >>= 1
            v += 1


def _closure_candidates(args):
    line, q, critical = args
    g = decode(line)
    out = []
    for h in _deletions(g):
        if critical and not edge_addition_critical(h, q):
            continue
        out.append(encode(canonical_graph(h)))
    return out


def _closure_levels(
    seed: GraphSet, t: ArrowTuple, q: int, critical: bool, jobs: int
) -> Iterator[tuple[int, list[str]]]:
    """Yield (edge count, sorted canonical lines) from the top level down."""
    by_level: dict[int, set[str]] = {}
    for line in seed.lines():
        by_level.setdefault(decode(line).edge_count, set()).add(line)
    if not by_level:
        return
    pool = Pool(jobs) if jobs > 1 else None
    try:
        e = max(by_level)
        current = by_level.pop(e)
        while True:
            lines = sorted(current)
            yield e, lines
            if e == 0:
                break
            nxt = by_level.pop(e - 1, set())
            rejected: set[str] = set()
            args = [(line, q, critical) for line in lines]
            if pool is not None:
                results = pool.imap_unordered(_closure_candidates, args, chunksize=16)
            else:
                results = map(_closure_candidates, args)
            for cands in results:
                for c in cands:
                    if c in nxt or c in rejected:
                        continue
                    if arrows(decode(c), t):
                        nxt.add(c)
                    else:
                        rejected.add(c)
            e -= 1
            current = nxt
            if not current:
                if not by_level:
                    break
                e = max(by_level)
                current = by_level.pop(e)
    finally:
        if pool is not None:
            pool.close()
            pool.join()


def downward_closure(
    seed: GraphSet,
    t: ArrowTuple,
    q: int,
    critical: bool = False,
    jobs: int = 1,
) -> GraphSet:
    """All graphs reachable from ``seed`` by edge deletions inside H(t; q; n).

    With ``critical`` the walk is restricted to edge-addition-critical members;
    since that property survives edge additions, this still reaches every
    critical member lying below some seed graph.
    """
    t = normalize_tuple(t)
    check_family(t, q)
    out = GraphSet()
    for e, lines in _closure_levels(seed, t, q, critical, jobs):
        for line in lines:
            out.add_canonical(line)
        log.debug("closure level %d edges: %d graphs", e, len(lines))
    return out


def downward_closure_to_file(
    seed: GraphSet,
    t: ArrowTuple,
    q: int,
    path,
    critical: bool = False,
    jobs: int = 1,
    spill_dir=None,
) -> int:
    """Disk-backed closure: keeps two levels in memory, merges sorted level files."""
    t = normalize_tuple(t)
    check_family(t, q)
    with tempfile.TemporaryDirectory(dir=spill_dir) as tmp:
        files = []
        total = 0
        for e, lines in _closure_levels(seed, t, q, critical, jobs):
            name = os.path.join(tmp, f"level{e:04d}.g6")
            with open(name, "w", encoding="ascii") as fh:
                fh.writelines(line + "\n" for line in lines)
            files.append(name)
            total += len(lines)
        handles = [open(f, encoding="ascii") for f in files]
        try:
            tmp_out = f"{path}.tmp"
            with open(tmp_out, "w", encoding="ascii") as out:
                out.writelines(heapq.merge(*handles))
            os.replace(tmp_out, path)
        finally:
            for h in handles:
                h.close()
    return total


# -- upward completion and population ----------------------------------------------


def maximal_supergraphs(graphs: Iterable[Graph], q: int) -> GraphSet:
    """Every maximal K_q-free supergraph (on the same vertices) of the given graphs."""
    seen: set[str] = set()
    frontier = []
    for g in graphs:
        line = encode(canonical_graph(g))
        if line not in seen:
            seen.add(line)
            frontier.append(line)
    out = GraphSet()
    while frontier:
        nxt = []
        for line in frontier:
            g = decode(line)
            adj = g.adj
            grown = False
            for u, v in g.non_edges():
                if has_clique(adj, adj[u] & adj[v], q - 2):
                    continue
                grown = True
                rows = list(adj)
                rows[u] |= 1 << v
                rows[v] |= 1 << u
                c = encode(canonical_graph(Graph._raw(g.n, rows)))
                if c not in seen:
                    seen.add(c)
                    nxt.append(c)
            if not grown:
                out.add_canonical(line, g)
        frontier = nxt
    return out


def populate(
    seed: GraphSet,
    t: ArrowTuple,
    q: int,
    rounds: int = 2,
    jobs: int = 1,
) -> GraphSet:
    """Grow a set of maximal graphs: close downward, complete upward, repeat.

    Each round starts from the maximal graphs found by the previous round and
    stops early at a fixpoint.  Returns seed plus every maximal graph found.
    """
    t = normalize_tuple(t)
    check_family(t, q)
    known = GraphSet()
    for g in seed:
        known.add(g)
    fresh = known
    for r in range(rounds):
        below = downward_closure(fresh, t, q, jobs=jobs)
        found = maximal_supergraphs(below, q)
        new = found.difference(known)
        log.info("populate round %d: %d new maximal graphs", r + 1, len(new))
        if not len(new):
            break
        known = known.union(new)
        fresh = new
    return known
