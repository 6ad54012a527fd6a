"""Isomorphism-free graph collections keyed by canonical graph6 lines."""

from __future__ import annotations

import hashlib
import os
from typing import Iterable, Iterator

from .canon import canonical_graph
from .graph import Graph
from .graph6 import decode, encode


class GraphSet:
    """Graphs up to isomorphism, iterated in sorted canonical-line order.

    Members are stored in canonical labelling, so iteration yields the
    canonical representatives rather than the graphs that were inserted.
    """

    def __init__(self, graphs: Iterable[Graph] = ()):
        self._items: dict[str, Graph] = {}
        for g in graphs:
            self.add(g)

    def add(self, g: Graph) -> bool:
        """Insert ``g``; returns False if an isomorphic copy was present."""
        c = canonical_graph(g)
        return self.add_canonical(encode(c), c)

    def add_canonical(self, line: str, g: Graph | None = None) -> bool:
        if line in self._items:
            return False
        self._items[line] = g if g is not None else decode(line)
        return True

    def __contains__(self, g) -> bool:
        if isinstance(g, str):
            return g in self._items
        return encode(canonical_graph(g)) in self._items

    def __len__(self):
        return len(self._items)

    def __iter__(self) -> Iterator[Graph]:
        for line in sorted(self._items):
            yield self._items[line]

    def __eq__(self, other):
        if not isinstance(other, GraphSet):
            return NotImplemented
        return self._items.keys() == other._items.keys()

    def __repr__(self):
        return f"GraphSet({len(self)} graphs)"

    def lines(self) -> list[str]:
        return sorted(self._items)

    def union(self, other: "GraphSet") -> "GraphSet":
        out = GraphSet()
        out._items = dict(self._items)
        out._items.update(other._items)
        return out

    def difference(self, other: "GraphSet") -> "GraphSet":
        out = GraphSet()
        out._items = {k: v for k, v in self._items.items() if k not in other._items}
        return out

    def save(self, path) -> int:
        tmp = f"{path}.tmp"
        with open(tmp, "w", encoding="ascii") as fh:
            for line in self.lines():
                fh.write(line)
                fh.write("\n")
        os.replace(tmp, path)
        return len(self)

    @classmethod
    def load(cls, path, canonical: bool = False) -> "GraphSet":
        """Read a graph6 file; set ``canonical`` when lines are known canonical."""
        out = cls()
        with open(path, "r", encoding="ascii") as fh:
            for raw in fh:
                s = raw.strip()
                if not s:
                    continue
                if canonical:
                    out.add_canonical(s)
                else:
                    out.add(decode(s))
        return out

    @classmethod
    def from_lines(cls, lines: Iterable[str]) -> "GraphSet":
        out = cls()
        for s in lines:
            s = s.strip()
            if s:
                out.add(decode(s))
        return out


def file_sha256(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 16), b""):
            h.update(chunk)
    return h.hexdigest()
