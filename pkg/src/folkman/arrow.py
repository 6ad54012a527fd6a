"""Exact decision of the vertex arrow property G -> (a_1, ..., a_s).

G arrows a tuple when every colouring of V(G) with s colours has, for some i,
an a_i-clique in colour i.  Non-arrowing has a compact witness (a free
colouring); arrowing is decided by exhausting the colouring search.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .graph import (
    Graph,
    dsatur_coloring,
    has_clique,
    iter_bits,
    max_clique_size,
)


class TupleError(ValueError):
    pass


class FamilyError(ValueError):
    """The requested family H(a_1, ..., a_s; q) is empty by definition."""


@dataclass(frozen=True)
class ArrowTuple:
    parts: tuple[int, ...]

    @property
    def s(self) -> int:
        return len(self.parts)

    @property
    def m(self) -> int:
        return sum(a - 1 for a in self.parts) + 1

    @property
    def p(self) -> int:
        return max(self.parts)

    def __str__(self):
        return ",".join(map(str, self.parts))

    def with_extra_twos(self, r: int) -> "ArrowTuple":
        return ArrowTuple(tuple(sorted((2,) * r + self.parts)))


def normalize_tuple(raw: Iterable[int] | ArrowTuple | str) -> ArrowTuple:
    """Canonical nondecreasing form: parts equal to 1 are dropped.

    An all-ones input becomes ``(1)``, which every nonempty graph arrows.
    """
    if isinstance(raw, ArrowTuple):
        return raw
    if isinstance(raw, str):
        try:
            raw = [int(x) for x in raw.replace(" ", "").split(",") if x]
        except ValueError:
            raise TupleError(f"cannot parse tuple {raw!r}") from None
    vals = list(raw)
    if not vals:
        raise TupleError("empty tuple")
    for a in vals:
        if not isinstance(a, int) or a < 1:
            raise TupleError(f"tuple entries must be positive integers, got {a!r}")
    kept = sorted(a for a in vals if a > 1)
    return ArrowTuple(tuple(kept) if kept else (1,))


@dataclass(frozen=True)
class FreeColoring:
    # assignment[v] in 1..s; colour i may not contain a parts[i-1]-clique
    assignment: tuple[int, ...]


@dataclass(frozen=True)
class ClassRecord:
    in_family: bool
    maximal: bool
    minimal: bool

    @property
    def bicritical(self) -> bool:
        return self.maximal and self.minimal


def is_free_coloring(g: Graph, t: ArrowTuple, coloring: FreeColoring) -> bool:
    if len(coloring.assignment) != g.n:
        return False
    classes = [0] * t.s
    for v, c in enumerate(coloring.assignment):
        if not 1 <= c <= t.s:
            return False
        classes[c - 1] |= 1 << v
    return not any(has_clique(g.adj, cls, a) for cls, a in zip(classes, t.parts))


def _from_classes(n, classes):
    assignment = [0] * n
    for i, cls in enumerate(classes):
        for v in iter_bits(cls):
            assignment[v] = i + 1
    return FreeColoring(tuple(assignment))


def _coloring_witness(g, t):
    # A proper colouring with at most m-1 colours groups into a free colouring:
    # part a_i takes a_i - 1 colour classes, and no clique meets a colour twice.
    colors = dsatur_coloring(g)
    if max(colors) + 1 > t.m - 1:
        return None
    classes = [0] * t.s
    color_to_part = []
    for i, a in enumerate(t.parts):
        color_to_part.extend([i] * (a - 1))
    for v, c in enumerate(colors):
        classes[color_to_part[c]] |= 1 << v
    return classes


def _search(adj, n, parts, order):
    s = len(parts)
    # a class may be opened only after the previous class of equal size
    prev_same = [-1] * s
    for i in range(1, s):
        if parts[i] == parts[i - 1]:
            prev_same[i] = i - 1
    classes = [0] * s
    need = [a - 1 for a in parts]

    def rec(k):
        if k == n:
            return True
        v = order[k]
        nb = adj[v]
        bit = 1 << v
        for i in range(s):
            cls = classes[i]
            if not cls and prev_same[i] >= 0 and not classes[prev_same[i]]:
                continue
            if need[i] == 1:
                if nb & cls:
                    continue
            elif has_clique(adj, nb & cls, need[i]):
                continue
            classes[i] = cls | bit
            if rec(k + 1):
                return True
            classes[i] = cls
        return False

    if rec(0):
        return classes
    return None


def find_free_coloring(g: Graph, t: ArrowTuple | Sequence[int]) -> FreeColoring | None:
    """A colouring witnessing that ``g`` does not arrow ``t``, or None."""
    t = normalize_tuple(t)
    n = g.n
    if t.parts == (1,):
        return None if n else FreeColoring(())
    adj = g.adj
    full = g.vertex_mask
    omega = max_clique_size(adj, full)
    if omega < t.p:
        return FreeColoring((t.s,) * n)
    classes = _coloring_witness(g, t)
    if classes is not None:
        return _from_classes(n, classes)
    order = sorted(range(n), key=lambda v: (-adj[v].bit_count(), v))
    classes = _search(adj, n, t.parts, order)
    if classes is None:
        return None
    return _from_classes(n, classes)


def arrows(g: Graph, t: ArrowTuple | Sequence[int]) -> bool:
    return find_free_coloring(g, t) is None


# -- uni(m|p) ----------------------------------------------------------------


def uni_tuples(m: int, p: int) -> list[ArrowTuple]:
    """All canonical tuples with parameter ``m`` and largest part at most ``p``.

    Partitions of m - 1 into parts from [1, p - 1], each part k mapped to
    a_i = k + 1, in lexicographic order of the nondecreasing tuples.
    """
    if m < 2 or p < 2:
        raise TupleError("uni(m|p) requires m >= 2 and p >= 2")
    out = []

    def rec(rest, low, acc):
        if rest == 0:
            out.append(ArrowTuple(tuple(k + 1 for k in acc)))
            return
        for k in range(low, min(rest, p - 1) + 1):
            acc.append(k)
            rec(rest - k, k, acc)
            acc.pop()

    rec(m - 1, 1, [])
    return sorted(out, key=lambda t: t.parts)


def dominant_tuples(m: int, p: int) -> list[ArrowTuple]:
    """Tuples of uni(m|p) that are not a split of another tuple in the range.

    Splitting a part a into (k, a - k + 1) preserves arrowing, so arrowing
    these implies arrowing the whole range.  A tuple is a split of another one
    exactly when two of its parts can be merged without exceeding ``p``.
    """
    out = []
    for t in uni_tuples(m, p):
        parts = t.parts
        if len(parts) < 2 or parts[0] + parts[1] - 1 > p:
            out.append(t)
    return out


def split_tuples(t: ArrowTuple) -> Iterator[ArrowTuple]:
    """Every canonical tuple obtained by splitting one part of ``t``."""
    seen = set()
    for i, a in enumerate(t.parts):
        for k in range(2, a):
            rest = t.parts[:i] + t.parts[i + 1:]
            new = normalize_tuple(rest + (k, a - k + 1))
            if new not in seen:
                seen.add(new)
                yield new


def arrows_uni(g: Graph, m: int, p: int, mode: str = "reduced") -> bool:
    if mode == "reduced":
        tuples = dominant_tuples(m, p)
    elif mode == "full":
        tuples = uni_tuples(m, p)
    else:
        raise ValueError(f"unknown uni mode {mode!r}")
    return all(arrows(g, t) for t in tuples)


# -- family classification -----------------------------------------------------


def check_family(t: ArrowTuple, q: int) -> None:
    if q <= t.p:
        raise FamilyError(f"H({t};{q}) is empty: q must exceed max part {t.p}")


def is_maximal_in_family(g: Graph, q: int) -> bool:
    """Every added edge creates a q-clique (membership not checked)."""
    adj = g.adj
    for u, v in g.non_edges():
        if not has_clique(adj, adj[u] & adj[v], q - 2):
            return False
    return True


def classify(g: Graph, t: ArrowTuple | Sequence[int], q: int) -> ClassRecord:
    t = normalize_tuple(t)
    check_family(t, q)
    adj = g.adj
    in_family = max_clique_size(adj, g.vertex_mask) < q and arrows(g, t)
    if not in_family:
        return ClassRecord(False, False, False)
    maximal = is_maximal_in_family(g, q)
    minimal = True
    for u, v in g.edges():
        rows = list(adj)
        rows[u] ^= 1 << v
        rows[v] ^= 1 << u
        if arrows(Graph._raw(g.n, rows), t):
            minimal = False
            break
    return ClassRecord(True, maximal, minimal)


def in_family(g: Graph, t: ArrowTuple, q: int) -> bool:
    return max_clique_size(g.adj, g.vertex_mask) < q and arrows(g, t)
