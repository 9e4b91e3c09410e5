"""Exact decision procedures for the forbidden subgraphs in play.

Friendship and fan containment are reduced to questions about vertex
neighbourhoods: ``G ⊇ F_k`` iff some ``G[N(v)]`` has a matching of size ``k``, and
``G ⊇ K_1 ∨ P_q`` iff some ``G[N(v)]`` contains a path on ``q`` vertices.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .errors import CapacityError, ParameterError
from .graph import Graph, bits

EXACT_SEARCH_LIMIT = 16


@dataclass(frozen=True)
class MatchingResult:
    size: int
    witness: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class CycleResult:
    circumference: int
    witness: tuple[int, ...] = ()


# -- matchings --------------------------------------------------------------

def _max_matching_pairs(g: Graph) -> list[int]:
    n = g.n
    rows = g.rows
    match = [-1] * n
    # greedy start
    for u in range(n):
        if match[u] == -1:
            for v in bits(rows[u]):
                if match[v] == -1:
                    match[u], match[v] = v, u
                    break
    nbrs = [list(bits(r)) for r in rows]

    for root in range(n):
        if match[root] != -1:
            continue
        used = [False] * n
        parent = [-1] * n
        base = list(range(n))
        used[root] = True
        queue = deque([root])
        end = -1

        while queue and end == -1:
            v = queue.popleft()
            for to in nbrs[v]:
                if base[v] == base[to] or match[v] == to:
                    continue
                if to == root or (match[to] != -1 and parent[match[to]] != -1):
                    # lowest common ancestor of the two bases in the alternating tree
                    seen = [False] * n
                    a = v
                    while True:
                        a = base[a]
                        seen[a] = True
                        if match[a] == -1:
                            break
                        a = parent[match[a]]
                    b = to
                    while True:
                        b = base[b]
                        if seen[b]:
                            break
                        b = parent[match[b]]
                    cur = b
                    blossom = [False] * n
                    for x, child in ((v, to), (to, v)):
                        while base[x] != cur:
                            blossom[base[x]] = blossom[base[match[x]]] = True
                            parent[x] = child
                            child = match[x]
                            x = parent[match[x]]
                    for i in range(n):
                        if blossom[base[i]]:
                            base[i] = cur
                            if not used[i]:
                                used[i] = True
                                queue.append(i)
                elif parent[to] == -1:
                    parent[to] = v
                    if match[to] == -1:
                        end = to
                        break
                    used[match[to]] = True
                    queue.append(match[to])

        v = end
        while v != -1:
            pv = parent[v]
            nxt = match[pv]
            match[v] = pv
            match[pv] = v
            v = nxt
    return match


def matching_number(g: Graph) -> int:
    """Size of a maximum matching (``ν(G)``)."""
    if g.m == 0:
        return 0
    return sum(1 for u, v in enumerate(_max_matching_pairs(g)) if v > u)


def max_matching(g: Graph) -> MatchingResult:
    """Maximum matching with the lexicographically smallest sorted edge list."""
    size = matching_number(g)
    chosen: list[tuple[int, int]] = []
    h = g
    need = size
    for u, v in g.edges():
        if need == 0:
            break
        if not (h.rows[u] >> v & 1):
            continue
        rest = _delete_vertices(h, (1 << u) | (1 << v))
        if matching_number(rest) == need - 1:
            chosen.append((u, v))
            h = rest
            need -= 1
    return MatchingResult(size, tuple(chosen))


def _delete_vertices(g: Graph, mask: int) -> Graph:
    """Same vertex set, with every edge touching ``mask`` removed."""
    keep = ~mask
    rows = [0 if (mask >> u & 1) else r & keep for u, r in enumerate(g.rows)]
    return Graph(g.n, rows, _trusted=True)


def is_kk2_free(g: Graph, k: int) -> bool:
    """True iff ``g`` has no matching of ``k`` edges."""
    if k < 1:
        raise ParameterError("k must be >= 1")
    return matching_number(g) <= k - 1


# -- friendship graphs and fans ---------------------------------------------

def friendship_center(g: Graph, k: int) -> int | None:
    """Smallest vertex that can serve as the centre of an ``F_k``, or ``None``."""
    if k < 1:
        raise ParameterError("k must be >= 1")
    rows = g.rows
    for v in range(g.n):
        nb = rows[v]
        if nb.bit_count() < 2 * k or g.edges_in(nb) < k:
            continue
        if matching_number(g.induced(bits(nb))) >= k:
            return v
    return None


def contains_friendship(g: Graph, k: int) -> bool:
    return friendship_center(g, k) is not None


def is_fk_free(g: Graph, k: int) -> bool:
    return friendship_center(g, k) is None


def _check_exact(g: Graph, what: str) -> None:
    if g.n > EXACT_SEARCH_LIMIT:
        raise CapacityError(f"{what} is exact only for n <= {EXACT_SEARCH_LIMIT}, got {g.n}")


def _reachable(rows: tuple[int, ...], start: int, allowed: int) -> int:
    seen = 1 << start
    frontier = seen
    while frontier:
        nxt = 0
        for v in bits(frontier):
            nxt |= rows[v]
        nxt &= allowed & ~seen
        seen |= nxt
        frontier = nxt
    return seen


def find_path(g: Graph, q: int, mask: int | None = None) -> tuple[int, ...] | None:
    """Lexicographically first path on ``q`` vertices inside ``mask``, if any."""
    rows = g.rows
    allowed = (1 << g.n) - 1 if mask is None else mask
    if q <= 0:
        return ()
    if allowed.bit_count() < q:
        return None

    def extend(seq: list[int], used: int) -> list[int] | None:
        if len(seq) == q:
            return seq
        last = seq[-1]
        free = allowed & ~used
        if _reachable(rows, last, free | (1 << last)).bit_count() - 1 < q - len(seq):
            return None
        for w in bits(rows[last] & free):
            found = extend(seq + [w], used | (1 << w))
            if found is not None:
                return found
        return None

    for s in bits(allowed):
        found = extend([s], 1 << s)
        if found is not None:
            return tuple(found)
    return None


def fan_center(g: Graph, q: int) -> int | None:
    """Smallest vertex whose neighbourhood holds a ``P_q`` (so ``g ⊇ K_1 ∨ P_q``)."""
    if q < 2:
        raise ParameterError("contains_fan needs q >= 2")
    _check_exact(g, "contains_fan")
    for v in range(g.n):
        nb = g.rows[v]
        if nb.bit_count() >= q and find_path(g, q, nb) is not None:
            return v
    return None


def contains_fan(g: Graph, q: int) -> bool:
    return fan_center(g, q) is not None


# -- cycles -----------------------------------------------------------------

def circumference(g: Graph) -> CycleResult:
    """Longest cycle by exhaustive path search (``n <= 16``).

    The witness starts at its smallest vertex and is the lexicographically first
    longest cycle in that orientation.
    """
    _check_exact(g, "circumference")
    n = g.n
    rows = g.rows
    best = 0
    best_seq: list[int] = []

    def dfs(s: int, seq: list[int], used: int, allowed: int) -> None:
        nonlocal best, best_seq
        last = seq[-1]
        if len(seq) >= 3 and rows[last] >> s & 1 and len(seq) > best:
            best = len(seq)
            best_seq = list(seq)
        free = allowed & ~used
        reach = _reachable(rows, last, free | (1 << last)).bit_count() - 1
        if len(seq) + reach <= best:
            return
        for w in bits(rows[last] & free):
            dfs(s, seq + [w], used | (1 << w), allowed)

    for s in range(n):
        allowed = ((1 << n) - 1) & ~((1 << s) - 1)
        if allowed.bit_count() <= best:
            break
        dfs(s, [s], 1 << s, allowed)
    return CycleResult(best, tuple(best_seq))


def has_cycle_of_length(g: Graph, length: int, mask: int | None = None) -> bool:
    """Whether ``g`` (restricted to ``mask``) contains ``C_length`` as a subgraph."""
    if length < 3:
        return False
    rows = g.rows
    full = (1 << g.n) - 1 if mask is None else mask
    if full.bit_count() > EXACT_SEARCH_LIMIT:
        raise CapacityError(f"cycle search is exact only for <= {EXACT_SEARCH_LIMIT} vertices")

    def dfs(s: int, last: int, depth: int, used: int, allowed: int) -> bool:
        if depth == length:
            return bool(rows[last] >> s & 1)
        for w in bits(rows[last] & allowed & ~used):
            if dfs(s, w, depth + 1, used | (1 << w), allowed):
                return True
        return False

    for s in bits(full):
        allowed = full & ~((1 << (s + 1)) - 1)
        if allowed.bit_count() < length - 1:
            break
        if dfs(s, s, 1, 1 << s, allowed):
            return True
    return False


def is_forest(g: Graph) -> bool:
    return g.m == g.n - len(g.components())


# -- cliques ----------------------------------------------------------------

def max_clique(g: Graph) -> tuple[int, ...]:
    """Lexicographically smallest maximum clique (branch and bound)."""
    rows = g.rows
    best: list[int] = []

    def expand(clique: list[int], cand: int) -> None:
        nonlocal best
        if not cand:
            if len(clique) > len(best):
                best = list(clique)
            return
        while cand:
            if len(clique) + cand.bit_count() <= len(best):
                return
            v = (cand & -cand).bit_length() - 1
            expand(clique + [v], cand & rows[v])
            cand &= ~(1 << v)

    expand([], (1 << g.n) - 1)
    return tuple(best)


def clique_number(g: Graph) -> int:
    return len(max_clique(g))


def is_triangle_free(g: Graph) -> bool:
    rows = g.rows
    return all(not (rows[u] & rows[v]) for u, v in g.edges())
