"""Immutable simple graphs on at most 64 vertices.

Adjacency is stored as one Python int per vertex (bit ``v`` of ``rows[u]`` is set
iff ``uv`` is an edge), which keeps adjacency tests and neighbourhood
intersections constant time at the sizes this package works with.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import CapacityError, ParameterError

MAX_VERTICES = 64


def bits(mask: int) -> Iterator[int]:
    """Yield the indices of set bits in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    out = 0
    for v in vertices:
        out |= 1 << v
    return out


class Graph:
    """A simple undirected graph on vertices ``0..n-1``.

    Instances are immutable and hashable; every "modifying" method returns a
    new graph.
    """

    __slots__ = ("_n", "_rows", "_m")

    def __init__(self, n: int, rows: Sequence[int] = (), *, _trusted: bool = False):
        if n < 0:
            raise ParameterError("vertex count must be non-negative")
        if n > MAX_VERTICES:
            raise CapacityError(f"n={n} exceeds the {MAX_VERTICES}-vertex capacity")
        rows = tuple(rows) if rows else (0,) * n
        if len(rows) != n:
            raise ParameterError(f"expected {n} adjacency rows, got {len(rows)}")
        if not _trusted:
            full = (1 << n) - 1
            for u, r in enumerate(rows):
                if r & ~full:
                    raise ParameterError(f"row {u} references a vertex outside 0..{n - 1}")
                if r >> u & 1:
                    raise ParameterError(f"loop at vertex {u}")
                for v in bits(r):
                    if not rows[v] >> u & 1:
                        raise ParameterError(f"asymmetric adjacency between {u} and {v}")
        self._n = n
        self._rows = rows
        self._m = sum(r.bit_count() for r in rows) // 2

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ParameterError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ParameterError(f"loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, rows, _trusted=True)

    @classmethod
    def from_adjacency(cls, matrix) -> "Graph":
        a = np.asarray(matrix)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ParameterError("adjacency matrix must be square")
        n = a.shape[0]
        rows = [mask_of(int(j) for j in np.flatnonzero(a[i])) for i in range(n)]
        return cls(n, rows)

    @property
    def n(self) -> int:
        return self._n

    @property
    def m(self) -> int:
        return self._m

    @property
    def rows(self) -> tuple[int, ...]:
        return self._rows

    def __len__(self) -> int:
        return self._n

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._n == other._n and self._rows == other._rows

    def __hash__(self) -> int:
        return hash((self._n, self._rows))

    def __repr__(self) -> str:
        return f"Graph(n={self._n}, m={self._m})"

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self._rows[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return list(bits(self._rows[v]))

    def degree(self, v: int) -> int:
        return self._rows[v].bit_count()

    def degrees(self) -> list[int]:
        return [r.bit_count() for r in self._rows]

    def max_degree(self) -> int:
        return max(self.degrees(), default=0)

    def edges(self) -> list[tuple[int, int]]:
        """Edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        return [(u, v) for u in range(self._n) for v in bits(self._rows[u] >> (u + 1) << (u + 1))]

    def non_edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u, v in combinations(range(self._n), 2) if not self._rows[u] >> v & 1]

    def degree_in(self, v: int, mask: int) -> int:
        """Number of neighbours of ``v`` inside the vertex set ``mask``."""
        return (self._rows[v] & mask).bit_count()

    def edges_in(self, mask: int) -> int:
        """``e(A)``: number of edges with both ends in ``mask``."""
        return sum((self._rows[v] & mask).bit_count() for v in bits(mask)) // 2

    def edges_between(self, a: int, b: int) -> int:
        """``e(A, B)`` for disjoint vertex sets given as masks."""
        return sum((self._rows[v] & b).bit_count() for v in bits(a))

    def with_edge(self, u: int, v: int) -> "Graph":
        if u == v:
            raise ParameterError(f"loop at vertex {u}")
        rows = list(self._rows)
        rows[u] |= 1 << v
        rows[v] |= 1 << u
        return Graph(self._n, rows, _trusted=True)

    def without_edge(self, u: int, v: int) -> "Graph":
        rows = list(self._rows)
        rows[u] &= ~(1 << v)
        rows[v] &= ~(1 << u)
        return Graph(self._n, rows, _trusted=True)

    def induced(self, vertices: Iterable[int]) -> "Graph":
        """Subgraph induced by ``vertices``, relabelled ``0..len-1`` in ascending order."""
        vs = sorted(set(vertices))
        index = {v: i for i, v in enumerate(vs)}
        rows = []
        for v in vs:
            rows.append(mask_of(index[w] for w in bits(self._rows[v]) if w in index))
        return Graph(len(vs), rows, _trusted=True)

    def relabel(self, order: Sequence[int]) -> "Graph":
        """Graph whose vertex ``i`` is the old vertex ``order[i]``."""
        if sorted(order) != list(range(self._n)):
            raise ParameterError("relabel order must be a permutation of the vertices")
        pos = [0] * self._n
        for i, v in enumerate(order):
            pos[v] = i
        rows = [mask_of(pos[w] for w in bits(self._rows[v])) for v in order]
        return Graph(self._n, rows, _trusted=True)

    def complement(self) -> "Graph":
        full = (1 << self._n) - 1
        return Graph(self._n, [full & ~r & ~(1 << u) for u, r in enumerate(self._rows)], _trusted=True)

    def components(self, mask: int | None = None) -> list[int]:
        """Connected components (as masks) of the subgraph induced by ``mask``.

        Ordered by smallest vertex.
        """
        left = (1 << self._n) - 1 if mask is None else mask
        comps = []
        while left:
            seed = left & -left
            comp = seed
            frontier = seed
            while frontier:
                nxt = 0
                for v in bits(frontier):
                    nxt |= self._rows[v]
                nxt &= left & ~comp
                comp |= nxt
                frontier = nxt
            comps.append(comp)
            left &= ~comp
        return comps

    def is_connected(self) -> bool:
        return self._n <= 1 or len(self.components()) == 1

    def adjacency_matrix(self) -> np.ndarray:
        a = np.zeros((self._n, self._n))
        for u, r in enumerate(self._rows):
            for v in bits(r):
                a[u, v] = 1.0
        return a

    def validate(self) -> None:
        """Re-check symmetry, looplessness and the cached edge count."""
        Graph(self._n, self._rows)
        if 2 * self._m != sum(self.degrees()):
            raise AssertionError("cached edge count out of sync")


# -- constructors -----------------------------------------------------------

def _check_capacity(n: int) -> None:
    if n > MAX_VERTICES:
        raise CapacityError(f"n={n} exceeds the {MAX_VERTICES}-vertex capacity")


def empty(n: int) -> Graph:
    if n < 0:
        raise ParameterError("n must be non-negative")
    return Graph(n)


def complete(n: int) -> Graph:
    if n < 0:
        raise ParameterError("n must be non-negative")
    _check_capacity(n)
    full = (1 << n) - 1
    return Graph(n, [full & ~(1 << u) for u in range(n)], _trusted=True)


def path(n: int) -> Graph:
    if n < 0:
        raise ParameterError("n must be non-negative")
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise ParameterError("a cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def disjoint_union(g: Graph, h: Graph) -> Graph:
    """``g ∪ h``; the vertices of ``h`` are shifted by ``g.n``."""
    _check_capacity(g.n + h.n)
    rows = list(g.rows) + [r << g.n for r in h.rows]
    return Graph(g.n + h.n, rows, _trusted=True)


def join(g: Graph, h: Graph) -> Graph:
    """``g ∨ h``: the disjoint union plus every edge between the two sides."""
    _check_capacity(g.n + h.n)
    gmask = (1 << g.n) - 1
    hmask = ((1 << h.n) - 1) << g.n
    rows = [r | hmask for r in g.rows] + [(r << g.n) | gmask for r in h.rows]
    return Graph(g.n + h.n, rows, _trusted=True)


def split_graph(n: int, k: int) -> Graph:
    """``S_{n,k} = K_k ∨ (n-k)K_1``; clique vertices are ``0..k-1``."""
    if not 0 <= k <= n:
        raise ParameterError(f"split_graph needs 0 <= k <= n, got n={n}, k={k}")
    return join(complete(k), empty(n - k))


def friendship(k: int) -> Graph:
    """``F_k``: ``k`` triangles sharing vertex 0; triangle ``i`` uses ``2i+1, 2i+2``."""
    if k < 1:
        raise ParameterError("friendship graph needs k >= 1")
    edges = []
    for i in range(k):
        a, b = 2 * i + 1, 2 * i + 2
        edges += [(0, a), (0, b), (a, b)]
    return Graph.from_edges(2 * k + 1, edges)


def fan(q: int) -> Graph:
    """``V_{q+1} = K_1 ∨ P_q``; the hub is vertex 0, the path is ``1..q``."""
    if q < 1:
        raise ParameterError("fan needs q >= 1")
    return join(complete(1), path(q))


def extremal_candidate(k: int, t: int) -> Graph:
    """``K_k ∨ tK_1``, the equality graph of the friendship bound.

    Here ``t`` stands for ``m/k - (k-1)/2``; the graph has ``kt + k(k-1)/2`` edges.
    """
    if k < 2:
        raise ParameterError("extremal_candidate needs k >= 2")
    if t < 1:
        raise ParameterError("extremal_candidate needs t >= 1")
    return split_graph(k + t, k)


def complete_multipartite(*parts: int) -> Graph:
    """Complete multipartite graph; part ``i`` occupies a contiguous index block."""
    if any(p < 0 for p in parts):
        raise ParameterError("part sizes must be non-negative")
    out = empty(0)
    for p in parts:
        out = join(out, empty(p))
    return out


def complete_bipartite(a: int, b: int) -> Graph:
    return complete_multipartite(a, b)


def bipartite_plus_edge(a: int, b: int) -> Graph:
    """``K_{a,b}`` plus the edge ``{0, 1}`` inside the ``a`` side.

    Every triangle contains that edge, so the graph is ``F_2``-free with ``ab + 1`` edges.
    """
    if a < 2 or b < 2:
        raise ParameterError("bipartite_plus_edge needs a, b >= 2")
    return complete_bipartite(a, b).with_edge(0, 1)
