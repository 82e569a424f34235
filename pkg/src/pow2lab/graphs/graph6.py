"""graph6 encoding and decoding.

The body lists the upper triangle of the adjacency matrix column by column
(``x(0,1), x(0,2), x(1,2), x(0,3), ...``), packed big-endian into 6-bit groups,
each offset by 63. Orders up to 62 use a one-byte prefix; larger orders use
``~`` followed by 18 bits, or ``~~`` followed by 36 bits.
"""

from __future__ import annotations

from typing import IO, Iterable, Iterator

from .core import Graph

HEADER = ">>graph6<<"


class Graph6Error(ValueError):
    pass


def _encode_n(n: int) -> str:
    if n < 0:
        raise ValueError("negative order")
    if n <= 62:
        return chr(n + 63)
    if n <= 258047:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    if n <= 68719476735:
        return "~~" + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))
    raise ValueError(f"order {n} too large for graph6")


def _decode_n(vals: list[int]) -> tuple[int, int]:
    """Return (n, number of prefix bytes consumed)."""
    if not vals:
        raise Graph6Error("empty graph6 string")
    if vals[0] != 63:
        return vals[0], 1
    if len(vals) >= 2 and vals[1] == 63:
        if len(vals) < 8:
            raise Graph6Error("truncated 8-byte order prefix")
        n = 0
        for v in vals[2:8]:
            n = n << 6 | v
        if n <= 258047:
            raise Graph6Error("non-canonical 8-byte order prefix")
        return n, 8
    if len(vals) < 4:
        raise Graph6Error("truncated 4-byte order prefix")
    n = 0
    for v in vals[1:4]:
        n = n << 6 | v
    if n <= 62:
        raise Graph6Error("non-canonical 4-byte order prefix")
    return n, 4


def write_graph6(g: Graph) -> str:
    n = g.n
    nbits = n * (n - 1) // 2
    adj = g.adj
    bits = []
    for j in range(1, n):
        row = adj[j]
        bits.extend(row >> i & 1 for i in range(j))
    bits.extend([0] * (-nbits % 6))
    chars = []
    for k in range(0, len(bits), 6):
        val = 0
        for b in bits[k:k + 6]:
            val = val << 1 | b
        chars.append(chr(val + 63))
    return _encode_n(n) + "".join(chars)


def parse_graph6(line: str) -> Graph:
    s = line.strip()
    if s.startswith(HEADER):
        s = s[len(HEADER):]
    vals = []
    for ch in s:
        o = ord(ch)
        if not 63 <= o <= 126:
            raise Graph6Error(f"character {ch!r} out of range 63..126")
        vals.append(o - 63)
    n, start = _decode_n(vals)
    body = vals[start:]
    nbits = n * (n - 1) // 2
    if len(body) != (nbits + 5) // 6:
        raise Graph6Error(f"body has {len(body)} bytes, expected {(nbits + 5) // 6} for n={n}")
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if body[k // 6] >> (5 - k % 6) & 1:
                edges.append((i, j))
            k += 1
    pad = -nbits % 6
    if pad and body[-1] & ((1 << pad) - 1):
        raise Graph6Error("nonzero padding bits")
    return Graph(n, tuple(edges))


def read_graph6_stream(stream: IO[str] | Iterable[str]) -> Iterator[tuple[int, Graph]]:
    """Yield ``(line_number, graph)`` for each non-blank line; a header line is skipped."""
    for lineno, line in enumerate(stream, 1):
        s = line.strip()
        if not s:
            continue
        if s == HEADER:
            continue
        try:
            yield lineno, parse_graph6(s)
        except Graph6Error as exc:
            raise Graph6Error(f"line {lineno}: {exc}") from None


def write_graph6_stream(graphs: Iterable[Graph], stream: IO[str]) -> int:
    count = 0
    for g in graphs:
        stream.write(write_graph6(g) + "\n")
        count += 1
    return count
