"""graph6 line codec (bit-exact with the standard format)."""

from __future__ import annotations

from typing import Iterable, Iterator, TextIO

from .graph import Graph, GraphError

HEADER = ">>graph6<<"


class Graph6Error(GraphError):
    pass


def _encode_n(n: int) -> str:
    if n <= 62:
        return chr(n + 63)
    if n <= 258047:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    raise Graph6Error(f"order {n} too large for graph6")


def encode(g: Graph) -> str:
    n = g.n
    adj = g.adj
    out = [_encode_n(n)]
    acc = 0
    nbits = 0
    for j in range(1, n):
        row = adj[j]
        for i in range(j):
            acc = (acc << 1) | ((row >> i) & 1)
            nbits += 1
            if nbits == 6:
                out.append(chr(acc + 63))
                acc = 0
                nbits = 0
    if nbits:
        out.append(chr((acc << (6 - nbits)) + 63))
    return "".join(out)


def decode(line: str) -> Graph:
    s = line.strip()
    if s.startswith(HEADER):
        s = s[len(HEADER):]
    if not s:
        raise Graph6Error("empty graph6 line")
    data = [ord(ch) - 63 for ch in s]
    if any(not 0 <= x <= 63 for x in data):
        raise Graph6Error(f"invalid graph6 character in {line!r}")
    if data[0] == 63:
        if len(data) >= 8 and data[1] == 63:
            raise Graph6Error("graph6 orders above 258047 are not supported")
        if len(data) < 4:
            raise Graph6Error(f"truncated graph6 header in {line!r}")
        n = (data[1] << 12) | (data[2] << 6) | data[3]
        body = data[4:]
    else:
        n = data[0]
        body = data[1:]
    nbits = n * (n - 1) // 2
    if len(body) != (nbits + 5) // 6:
        raise Graph6Error(f"graph6 body length mismatch for n={n} in {line!r}")
    adj = [0] * n
    k = 0
    j, i = 1, 0
    for byte in body:
        for shift in range(5, -1, -1):
            if k >= nbits:
                if (byte >> shift) & 1:
                    raise Graph6Error("nonzero graph6 padding bits")
                continue
            if (byte >> shift) & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            k += 1
            i += 1
            if i == j:
                j += 1
                i = 0
    return Graph(n, adj)


def read_lines(lines: Iterable[str]) -> Iterator[Graph]:
    for raw in lines:
        s = raw.strip()
        if s:
            yield decode(s)


def read_file(path) -> list[Graph]:
    with open(path, "r", encoding="ascii") as fh:
        return list(read_lines(fh))


def write_lines(graphs: Iterable[Graph], fh: TextIO) -> int:
    count = 0
    for g in graphs:
        fh.write(encode(g))
        fh.write("\n")
        count += 1
    return count
