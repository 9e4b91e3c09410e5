"""Canonical forms for isomorphism dedup of small graphs.

The canonical form is the graph6 text of the relabelling that minimises the
upper-triangle adjacency bit string (graph6 column order). The minimum is taken
over every vertex order compatible with an isomorphism-invariant refinement of
the degree partition, so equal forms mean isomorphic graphs. Two cheap prunes
keep the search small: branches whose bit prefix already exceeds the best are
cut, and of two twin vertices (same neighbourhood apart from each other) only
one is tried, since swapping them is an automorphism.
"""

from __future__ import annotations

from .errors import CapacityError
from .graph import Graph, mask_of
from .graph6 import to_graph6

CANON_LIMIT = 10


def _refine(rows: tuple[int, ...], cells: list[list[int]]) -> list[list[int]]:
    while True:
        masks = [mask_of(c) for c in cells]
        out: list[list[int]] = []
        split = False
        for cell in cells:
            if len(cell) == 1:
                out.append(cell)
                continue
            sig = {v: tuple((rows[v] & mk).bit_count() for mk in masks) for v in cell}
            keys = sorted(set(sig.values()))
            if len(keys) > 1:
                split = True
                for key in keys:
                    out.append([v for v in cell if sig[v] == key])
            else:
                out.append(cell)
        cells = out
        if not split:
            return cells


def canonical_order(g: Graph) -> list[int]:
    """Vertex order whose relabelling gives the canonical adjacency string."""
    n = g.n
    if n > CANON_LIMIT:
        raise CapacityError(f"canonical_form supports n <= {CANON_LIMIT}, got {n}")
    if n == 0:
        return []
    rows = g.rows
    best_cols: list[int] | None = None
    best_order: list[int] = []

    def search(placed: list[int], cells: list[list[int]], cols: list[int]) -> None:
        nonlocal best_cols, best_order
        p = len(placed)
        if p == n:
            if best_cols is None or cols < best_cols:
                best_cols = cols
                best_order = placed
            return
        cell = cells[p]
        tried: list[int] = []
        for v in cell:
            rv = rows[v]
            if any((rows[u] & ~(1 << v)) == (rv & ~(1 << u)) for u in tried):
                continue
            tried.append(v)
            col = 0
            for w in placed:
                col = (col << 1) | (rv >> w & 1)
            new_cols = cols + [col]
            if best_cols is not None and new_cols > best_cols[: p + 1]:
                continue
            rest = [u for u in cell if u != v]
            new_cells = cells[:p] + [[v]] + ([rest] if rest else []) + cells[p + 1 :]
            if rest:
                new_cells = _refine(rows, new_cells)
            search(placed + [v], new_cells, new_cols)

    search([], _refine(rows, [list(range(n))]), [])
    return best_order


def canonical_graph(g: Graph) -> Graph:
    return g.relabel(canonical_order(g))


def canonical_form(g: Graph) -> bytes:
    """Isomorphism-invariant key: equal bytes iff the graphs are isomorphic."""
    return to_graph6(canonical_graph(g)).encode("ascii")


def is_isomorphic(g: Graph, h: Graph) -> bool:
    if g.n != h.n or g.m != h.m or sorted(g.degrees()) != sorted(h.degrees()):
        return False
    return canonical_form(g) == canonical_form(h)
