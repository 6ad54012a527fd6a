"""Canonical labelling, isomorphism testing and automorphism group order.

Individualisation-refinement search: the unit partition is refined to an
equitable ordered partition by neighbour counts, the first smallest
non-singleton cell is the target cell, and each vertex of it is individualised
in turn.  Every discrete leaf yields a relabelled graph; leaves are ordered by
(refinement trace, graph6 bit string) and the least one is canonical.
Automorphisms found when two leaves coincide prune sibling branches, and the
orbit sizes seen along the first path give the exact group order.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod
from typing import Sequence

from .graph import Graph, bits_of
from .graph6 import encode


@dataclass(frozen=True)
class CanonicalForm:
    canon_g6: str
    aut_order: int
    # canon_perm[v] is the canonical label of input vertex v
    canon_perm: tuple[int, ...]
    generators: tuple[tuple[int, ...], ...] = ()

    def orbits(self) -> list[int]:
        """Smallest vertex of each vertex's orbit under Aut(G)."""
        return orbit_roots(len(self.canon_perm), self.generators)


def _refine(adj, cells, active, trace, n):
    pending = set(active)
    active = list(active)
    while active:
        w = active.pop(0)
        pending.discard(w)
        new_cells = []
        for x in cells:
            if not x & (x - 1):
                new_cells.append(x)
                continue
            buckets = {}
            y = x
            while y:
                low = y & -y
                c = (adj[low.bit_length() - 1] & w).bit_count()
                if c in buckets:
                    buckets[c] |= low
                else:
                    buckets[c] = low
                y ^= low
            if len(buckets) == 1:
                new_cells.append(x)
                continue
            keys = sorted(buckets)
            parts = [buckets[k] for k in keys]
            sizes = tuple(p.bit_count() for p in parts)
            trace.append((len(new_cells), tuple(keys), sizes))
            new_cells.extend(parts)
            if x in pending:
                pending.discard(x)
                active.remove(x)
                active.extend(parts)
                pending.update(parts)
            else:
                big = sizes.index(max(sizes))
                for i, p in enumerate(parts):
                    if i != big:
                        active.append(p)
                        pending.add(p)
        cells = new_cells
        if len(cells) == n:
            break
    return cells


def orbit_roots(n: int, gens: Sequence[Sequence[int]]) -> list[int]:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in gens:
        for v in range(n):
            a, b = find(v), find(g[v])
            if a != b:
                if a < b:
                    parent[b] = a
                else:
                    parent[a] = b
    return [find(v) for v in range(n)]


class _Search:
    def __init__(self, adj, n):
        self.adj = adj
        self.n = n
        self.first_path = None
        self.first_traces = None
        self.first_code = None
        self.first_lab = None
        self.best_path = None
        self.best_traces = None
        self.best_code = None
        self.best_lab = None
        self.gens = []
        self.orbit_sizes = {}

    def run(self):
        n = self.n
        trace = []
        cells = _refine(self.adj, [(1 << n) - 1], [(1 << n) - 1], trace, n)
        self.visit(cells, [], (tuple(trace),))

    def _code(self, lab):
        adj = self.adj
        code = 0
        for j in range(1, self.n):
            row = adj[lab[j]]
            for i in range(j):
                code = (code << 1) | ((row >> lab[i]) & 1)
        return code

    def _gens_fixing(self, path):
        return [g for g in self.gens if all(g[x] == x for x in path)]

    def _leaf(self, cells, path, traces):
        lab = [c.bit_length() - 1 for c in cells]
        code = self._code(lab)
        if self.first_path is None:
            self.first_path = self.best_path = list(path)
            self.first_traces = self.best_traces = traces
            self.first_code = self.best_code = code
            self.first_lab = self.best_lab = lab
            return len(path)
        if code == self.first_code and traces == self.first_traces:
            self._record(self.first_lab, lab)
            return _common_prefix(path, self.first_path)
        if code == self.best_code and traces == self.best_traces:
            self._record(self.best_lab, lab)
            return _common_prefix(path, self.best_path)
        if (traces, code) < (self.best_traces, self.best_code):
            self.best_path = list(path)
            self.best_traces = traces
            self.best_code = code
            self.best_lab = lab
        return len(path)

    def _record(self, lab_a, lab_b):
        perm = [0] * self.n
        for a, b in zip(lab_a, lab_b):
            perm[a] = b
        if any(perm[v] != v for v in range(self.n)):
            self.gens.append(tuple(perm))

    def visit(self, cells, path, traces):
        n = self.n
        level = len(path)
        if len(cells) == n:
            return self._leaf(cells, path, traces)
        target, size = -1, n + 1
        for i, c in enumerate(cells):
            k = c.bit_count()
            if 1 < k < size:
                target, size = i, k
                if k == 2:
                    break
        cell = cells[target]
        tried = []
        roots, known = None, -1
        for v in bits_of(cell):
            if tried and self.gens:
                if known != len(self.gens):
                    known = len(self.gens)
                    roots = orbit_roots(n, self._gens_fixing(path))
                if roots[v] in {roots[u] for u in tried}:
                    continue
            tried.append(v)
            b = 1 << v
            child = cells[:target] + [b, cell ^ b] + cells[target + 1:]
            trace = []
            child = _refine(self.adj, child, [b], trace, n)
            child_traces = traces + (tuple(trace),)
            if self.first_path is not None:
                k = len(child_traces)
                if child_traces != self.first_traces[:k] and child_traces > self.best_traces[:k]:
                    continue
            r = self.visit(child, path + [v], child_traces)
            if r < level:
                return r
        if self.first_path is not None and path == self.first_path[:level]:
            roots = orbit_roots(n, self._gens_fixing(path))
            anchor = roots[self.first_path[level]]
            self.orbit_sizes[level] = sum(1 for v in bits_of(cell) if roots[v] == anchor)
        return level


def _common_prefix(a, b):
    k = 0
    for x, y in zip(a, b):
        if x != y:
            break
        k += 1
    return k


def _canonical_labeling(g: Graph):
    n = g.n
    if n <= 1:
        return list(range(n)), [], 1
    s = _Search(g.adj, n)
    s.run()
    return s.best_lab, s.gens, prod(s.orbit_sizes.values())


def canonical_form(g: Graph) -> CanonicalForm:
    lab, gens, order = _canonical_labeling(g)
    perm = [0] * g.n
    for i, v in enumerate(lab):
        perm[v] = i
    return CanonicalForm(
        canon_g6=encode(g.relabel(perm)),
        aut_order=order,
        canon_perm=tuple(perm),
        generators=tuple(gens),
    )


def canonical_graph(g: Graph) -> Graph:
    lab, _, _ = _canonical_labeling(g)
    perm = [0] * g.n
    for i, v in enumerate(lab):
        perm[v] = i
    return g.relabel(perm)


def canonical_g6(g: Graph) -> str:
    return encode(canonical_graph(g))


def aut_order(g: Graph) -> int:
    return _canonical_labeling(g)[2]


def are_isomorphic(g: Graph, h: Graph) -> bool:
    if g.n != h.n or g.edge_count != h.edge_count:
        return False
    if sorted(g.degrees()) != sorted(h.degrees()):
        return False
    return canonical_g6(g) == canonical_g6(h)
