"""graph6 encoding and decoding.

Implements the short form (``n <= 62``, one size byte) and the long form with a
``~`` prefix and three size bytes, which covers the remaining sizes up to the
64-vertex capacity. The optional ``>>graph6<<`` header is accepted on input.
"""

from __future__ import annotations

from .errors import CapacityError, Graph6Error
from .graph import MAX_VERTICES, Graph

HEADER = ">>graph6<<"


def _size_prefix(n: int) -> str:
    if n <= 62:
        return chr(n + 63)
    return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))


def to_graph6(g: Graph) -> str:
    n = g.n
    rows = g.rows
    out = [_size_prefix(n)]
    acc = 0
    nbits = 0
    for j in range(1, n):
        rj = rows[j]
        for i in range(j):
            acc = (acc << 1) | (rj >> i & 1)
            nbits += 1
            if nbits == 6:
                out.append(chr(acc + 63))
                acc = 0
                nbits = 0
    if nbits:
        out.append(chr((acc << (6 - nbits)) + 63))
    return "".join(out)


def from_graph6(text: str | bytes) -> Graph:
    """Decode one graph6 record.

    Raises :class:`Graph6Error` with the byte offset of the first problem.
    """
    if isinstance(text, bytes):
        try:
            text = text.decode("ascii")
        except UnicodeDecodeError as exc:
            raise Graph6Error("non-ASCII byte", exc.start) from None
    s = text.rstrip("\r\n")
    start = 0
    if s.startswith(HEADER):
        start = len(HEADER)
    if start >= len(s):
        raise Graph6Error("missing size header", start)

    for pos in range(start, len(s)):
        c = ord(s[pos])
        if not 63 <= c <= 126:
            raise Graph6Error(f"invalid character {s[pos]!r}", pos)

    pos = start
    if s[pos] == "~":
        if pos + 1 < len(s) and s[pos + 1] == "~":
            raise Graph6Error("8-byte size form exceeds capacity", pos)
        if pos + 4 > len(s):
            raise Graph6Error("truncated long-form size header", len(s))
        n = 0
        for c in s[pos + 1 : pos + 4]:
            n = (n << 6) | (ord(c) - 63)
        if n <= 62:
            raise Graph6Error("non-canonical long-form size", pos)
        if n > MAX_VERTICES:
            raise CapacityError(f"graph6 record has n={n} > {MAX_VERTICES}")
        pos += 4
    else:
        n = ord(s[pos]) - 63
        pos += 1

    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    have = len(s) - pos
    if have != need:
        raise Graph6Error(f"expected {need} data bytes for n={n}, found {have}", pos + min(have, need))

    rows = [0] * n
    i, j = 0, 1
    k = 0
    for off in range(need):
        val = ord(s[pos + off]) - 63
        for shift in range(5, -1, -1):
            if k == nbits:
                if val & ((1 << (shift + 1)) - 1):
                    raise Graph6Error("nonzero padding bits", pos + off)
                break
            if val >> shift & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
            i += 1
            if i == j:
                i = 0
                j += 1
    return Graph(n, rows, _trusted=True)
