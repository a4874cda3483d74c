"""graph6 text encoding.

Layout: a size prefix, then the upper triangle of the adjacency matrix read
column by column (``x[0,1], x[0,2], x[1,2], x[0,3], ...``), packed six bits per
byte big-endian, each byte offset by 63, zero padded at the end.

Sizes up to 62 use one prefix byte ``n + 63``; sizes 63..258047 use ``~``
followed by three 6-bit bytes (pass ``extended=False`` to refuse these).  The
eight-byte form for larger graphs is always rejected.
"""

from __future__ import annotations

from typing import Iterable, Iterator

from .graph import Graph

MAX_SHORT = 62
MAX_MEDIUM = 258047


class Graph6Error(ValueError):
    pass


def _size_prefix(n: int, extended: bool = True) -> bytes:
    if n <= MAX_SHORT:
        return bytes([n + 63])
    if not extended:
        raise Graph6Error(f"n={n} exceeds {MAX_SHORT}; the extended size form is disabled")
    if n <= MAX_MEDIUM:
        return bytes([126, 63 + ((n >> 12) & 63), 63 + ((n >> 6) & 63), 63 + (n & 63)])
    raise Graph6Error(f"n={n} needs the 8-byte size form, which is not supported")


def encode(g: Graph, extended: bool = True) -> bytes:
    n = g.n
    out = bytearray(_size_prefix(n, extended))
    masks = g.masks
    acc = 0
    nbits = 0
    for j in range(1, n):
        mj = masks[j]
        for i in range(j):
            acc = (acc << 1) | ((mj >> i) & 1)
            nbits += 1
            if nbits == 6:
                out.append(acc + 63)
                acc = 0
                nbits = 0
    if nbits:
        out.append((acc << (6 - nbits)) + 63)
    return bytes(out)


def emit_graph6(g: Graph, extended: bool = True) -> str:
    return encode(g, extended).decode("ascii")


def decode(data: bytes | str, extended: bool = True) -> Graph:
    if isinstance(data, str):
        data = data.encode("ascii")
    data = data.strip()
    if data.startswith(b">>graph6<<"):
        data = data[len(b">>graph6<<"):]
    if not data:
        raise Graph6Error("empty graph6 string")
    for pos, byte in enumerate(data):
        if not 63 <= byte <= 126:
            raise Graph6Error(f"byte {byte!r} at offset {pos} is outside 63..126")
    if data[0] != 126:
        n = data[0] - 63
        body = data[1:]
    else:
        if not extended:
            raise Graph6Error("extended size form (n > 62) is disabled")
        if len(data) >= 2 and data[1] == 126:
            raise Graph6Error("8-byte size form is not supported")
        if len(data) < 4:
            raise Graph6Error("truncated size prefix")
        n = ((data[1] - 63) << 12) | ((data[2] - 63) << 6) | (data[3] - 63)
        if n <= MAX_SHORT:
            raise Graph6Error(f"non-canonical size prefix for n={n}")
        body = data[4:]
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    if len(body) < need:
        raise Graph6Error(f"truncated payload: need {need} bytes, got {len(body)}")
    if len(body) > need:
        raise Graph6Error(f"trailing data: expected {need} payload bytes, got {len(body)}")

    def bits() -> Iterator[int]:
        for byte in body:
            x = byte - 63
            for shift in range(5, -1, -1):
                yield (x >> shift) & 1

    it = bits()
    edges = []
    for j in range(1, n):
        for i in range(j):
            if next(it):
                edges.append((i, j))
    pad = list(it)
    if any(pad):
        raise Graph6Error("non-zero padding bits")
    return Graph.from_edges(n, edges)


def parse_graph6(text: bytes | str, extended: bool = True) -> Graph:
    return decode(text, extended)


def read_graph6_lines(lines: Iterable[str]) -> list[Graph]:
    return [decode(line) for line in lines if line.strip()]
