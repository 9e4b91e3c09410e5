"""Core peeling, the eta functional and the proof-replay diagnostics.

For a vertex set ``V`` and a weight vector ``x`` with entries in ``(0, 1]``::

    eta(V) = Σ_{u ∈ V} (d_V(u) - k + 1) x_u - e(V),    eta(∅) = 0

Replays run the extremal argument's bookkeeping on a concrete graph: pick the
top Perron vertex ``u*``, split the rest into ``U = N(u*)`` and ``W``, peel
``G[U]`` to its ``(k-1)``-core and sort the core's components by size and by
whether they contain ``C_{2k-1}``.

Lemma checks report one of three outcomes. ``"out-of-hypothesis"`` means the
graph does not meet the lemma's premise, so nothing can be concluded.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .canon import CANON_LIMIT, is_isomorphic
from .detect import has_cycle_of_length, is_fk_free
from .errors import ParameterError
from .graph import Graph, bits, mask_of, split_graph
from .graph6 import to_graph6
from .spectral import EQUALITY_TOL, PerronCertificate, main_bound_values, perron

HOLDS = "holds"
FAILS = "fails"
OUT = "out-of-hypothesis"

ETA_TOL = 1e-9
LEMMA_TOL = 1e-6


def _as_mask(vertices: Iterable[int] | int) -> int:
    return vertices if isinstance(vertices, int) else mask_of(vertices)


@dataclass(frozen=True)
class CoreDecomposition:
    order: int
    subset: frozenset[int]
    survivors: frozenset[int]
    peel_order: tuple[tuple[int, int], ...]
    low: frozenset[int]
    rest: frozenset[int]

    @property
    def peeled(self) -> frozenset[int]:
        return frozenset(v for v, _ in self.peel_order)


def k_core(g: Graph, subset: Iterable[int] | int, order: int, priority: Sequence[int] | None = None) -> CoreDecomposition:
    """Peel ``G[subset]`` to its ``order``-core (minimum degree ``>= order``).

    By default vertices that already violate the floor in ``G[subset]`` are
    deleted first, in index order, and later violators follow first-in
    first-out. ``priority`` instead deletes, at every step, the earliest
    violating vertex of that sequence. ``low`` holds the peeled vertices whose
    original degree in ``G[subset]`` was below ``order``; ``rest`` the others.
    """
    sub = _as_mask(subset)
    if sub & ~((1 << g.n) - 1):
        raise ParameterError("subset contains vertices outside the graph")
    rows = g.rows
    alive = sub
    deg = {v: (rows[v] & sub).bit_count() for v in bits(sub)}
    peeled: list[tuple[int, int]] = []

    def delete(v: int) -> None:
        nonlocal alive
        alive &= ~(1 << v)
        peeled.append((v, deg[v]))
        for w in bits(rows[v] & alive):
            deg[w] -= 1

    if priority is None:
        queue = [v for v in bits(sub) if deg[v] < order]
        queued = mask_of(queue)
        i = 0
        while i < len(queue):
            v = queue[i]
            i += 1
            nbrs = rows[v] & alive
            delete(v)
            for w in bits(nbrs):
                if deg[w] < order and not queued >> w & 1:
                    queued |= 1 << w
                    queue.append(w)
    else:
        order_list = [v for v in priority if sub >> v & 1]
        if sorted(order_list) != sorted(bits(sub)):
            raise ParameterError("priority must list every vertex of the subset exactly once")
        while True:
            for v in order_list:
                if alive >> v & 1 and deg[v] < order:
                    delete(v)
                    break
            else:
                break

    original = {v: (rows[v] & sub).bit_count() for v in bits(sub)}
    low = frozenset(v for v, _ in peeled if original[v] < order)
    rest = frozenset(v for v, _ in peeled) - low
    return CoreDecomposition(order, frozenset(bits(sub)), frozenset(bits(alive)), tuple(peeled), low, rest)


@dataclass(frozen=True)
class EtaEvaluation:
    subset: frozenset[int]
    value: float
    terms: dict[int, float] = field(compare=False)
    edge_count: int = 0

    def recompute(self) -> float:
        return sum(self.terms.values()) - self.edge_count


def eta1(g: Graph, subset: Iterable[int] | int, x: Sequence[float], k: int) -> EtaEvaluation:
    sub = _as_mask(subset)
    terms = {v: (g.degree_in(v, sub) - k + 1) * float(x[v]) for v in bits(sub)}
    e = g.edges_in(sub)
    return EtaEvaluation(frozenset(bits(sub)), sum(terms.values()) - e, terms, e)


@dataclass(frozen=True)
class CoreMonotonicity:
    lhs: float
    rhs: float
    holds: bool
    equality: bool
    is_core: bool


def verify_core_monotonicity(g: Graph, subset: Iterable[int] | int, x: Sequence[float], k: int) -> CoreMonotonicity:
    """Compare ``eta(V)`` with ``eta(V^c)``, ``V^c`` the ``(k-1)``-core of ``G[V]``."""
    sub = _as_mask(subset)
    core = k_core(g, sub, k - 1)
    lhs = eta1(g, sub, x, k).value
    rhs = eta1(g, mask_of(core.survivors), x, k).value
    return CoreMonotonicity(
        lhs,
        rhs,
        lhs <= rhs + ETA_TOL,
        abs(lhs - rhs) <= ETA_TOL,
        core.survivors == core.subset,
    )


H1, H2, H3 = "H1", "H2", "H3"


@dataclass(frozen=True)
class ComponentClassification:
    components: tuple[frozenset[int], ...]
    labels: tuple[str, ...]

    def counts(self) -> dict[str, int]:
        return {lab: self.labels.count(lab) for lab in (H1, H2, H3)}

    def of(self, label: str) -> list[frozenset[int]]:
        return [c for c, lab in zip(self.components, self.labels) if lab == label]


def classify_components(g: Graph, core: CoreDecomposition, k: int) -> ComponentClassification:
    """Label each component ``H`` of ``G[core]``.

    ``H1``: ``|H| > (5k-2)/2``. ``H2``: ``k <= |H| <= (5k-2)/2`` and ``H ⊇ C_{2k-1}``.
    ``H3``: everything else.
    """
    comps = g.components(mask_of(core.survivors))
    labels = []
    for c in comps:
        size = c.bit_count()
        if 2 * size > 5 * k - 2:
            labels.append(H1)
        elif size >= k and has_cycle_of_length(g, 2 * k - 1, c):
            labels.append(H2)
        else:
            labels.append(H3)
    return ComponentClassification(tuple(frozenset(bits(c)) for c in comps), tuple(labels))


def _is_split(h: Graph, q: int) -> bool:
    """Whether ``h ≅ S_{|h|, q}``."""
    n = h.n
    if not 0 <= q <= n:
        return False
    if n <= CANON_LIMIT:
        return is_isomorphic(h, split_graph(n, q))
    # degree profile determines the split graph: q universal vertices, the rest of degree q
    degs = sorted(h.degrees(), reverse=True)
    want = [n - 1] * q + [q] * (n - q) if q < n else [n - 1] * n
    return degs == want and h.m == q * (q - 1) // 2 + q * (n - q)


@dataclass
class ProofReplayReport:
    graph_id: str
    k: int
    n: int
    m: int
    rho: float
    ustar: int
    size_u: int
    size_w: int
    eta_u: float
    eta_uc: float
    ineq1_slack: float
    ineq5_slack: float
    classification: dict[str, int]
    component_sizes: list[int]
    component_labels: list[str]
    component_etas: list[float]
    e_w: int
    x_w_min: float | None
    x_w_max: float | None
    gu_is_split: bool
    fk_free: bool
    achieves_bound: bool
    low_size: int
    rest_size: int
    s_edges: int
    s_deletion_degrees: int
    lemmas: dict[str, str]

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def proof_replay(g: Graph, k: int, cert: PerronCertificate | None = None, graph_id: str | None = None) -> ProofReplayReport:
    if k < 2:
        raise ParameterError("proof_replay needs k >= 2")
    if g.n == 0 or not g.is_connected():
        raise ParameterError("proof_replay needs a connected graph")
    if cert is None:
        cert = perron(g)
    x = cert.x
    rho = cert.rho
    full = (1 << g.n) - 1
    u_mask = g.rows[cert.ustar]
    w_mask = full & ~u_mask & ~(1 << cert.ustar)

    core = k_core(g, u_mask, k - 1)
    uc_mask = mask_of(core.survivors)
    classes = classify_components(g, core, k)
    half = k * (k - 1) / 2

    eta_u = eta1(g, u_mask, x, k).value
    eta_uc = eta1(g, uc_mask, x, k).value
    comp_etas = [eta1(g, mask_of(c), x, k).value for c in classes.components]
    e_w = g.edges_in(w_mask)
    ineq1 = rho * rho - (k - 1) * rho - (g.m - half)
    ineq5 = eta_u - (e_w - half)
    xw = [x[v] for v in bits(w_mask)]

    fk_free = is_fk_free(g, k)
    plus, _ = main_bound_values(g.m, k)
    achieves = plus is not None and abs(plus - rho) <= EQUALITY_TOL

    s_mask = mask_of(core.rest)
    s_edges = g.edges_in(s_mask) + g.edges_between(s_mask, uc_mask)
    s_del = sum(d for v, d in core.peel_order if v in core.rest)

    lemmas: dict[str, str] = {}
    lemmas["core_monotonicity"] = HOLDS if eta_u <= eta_uc + ETA_TOL else FAILS
    lemmas["peel_edge_count"] = HOLDS if s_edges <= (k - 2) * len(core.rest) else FAILS
    if ineq1 >= -LEMMA_TOL:
        lemmas["star_eta_bound"] = HOLDS if ineq5 >= -LEMMA_TOL else FAILS
    else:
        lemmas["star_eta_bound"] = OUT
    # components of G[U^c] in an F_k-free graph are kK2-free, which is all these two need
    h1_etas = [e for e, lab in zip(comp_etas, classes.labels) if lab == H1]
    h3_etas = [e for e, lab in zip(comp_etas, classes.labels) if lab == H3]
    if fk_free:
        lemmas["h1_eta"] = HOLDS if all(e <= -half + LEMMA_TOL for e in h1_etas) else FAILS
        lemmas["h3_eta"] = HOLDS if all(e <= -(k - 1) + LEMMA_TOL for e in h3_etas) else FAILS
    else:
        lemmas["h1_eta"] = lemmas["h3_eta"] = OUT
    counts = classes.counts()
    # these two lean on rho > 2k^2, which the argument gets from m >= 4k^4
    if fk_free and achieves and g.m >= 4 * k**4:
        lemmas["h2_empty"] = HOLDS if counts[H2] == 0 else FAILS
        lemmas["h3_empty_h1_nonempty"] = HOLDS if counts[H3] == 0 and counts[H1] > 0 else FAILS
    else:
        lemmas["h2_empty"] = lemmas["h3_empty_h1_nonempty"] = OUT

    return ProofReplayReport(
        graph_id=graph_id if graph_id is not None else to_graph6(g),
        k=k,
        n=g.n,
        m=g.m,
        rho=rho,
        ustar=cert.ustar,
        size_u=u_mask.bit_count(),
        size_w=w_mask.bit_count(),
        eta_u=eta_u,
        eta_uc=eta_uc,
        ineq1_slack=ineq1,
        ineq5_slack=ineq5,
        classification=counts,
        component_sizes=[len(c) for c in classes.components],
        component_labels=list(classes.labels),
        component_etas=comp_etas,
        e_w=e_w,
        x_w_min=min(xw) if xw else None,
        x_w_max=max(xw) if xw else None,
        gu_is_split=_is_split(g.induced(bits(u_mask)), k - 1),
        fk_free=fk_free,
        achieves_bound=achieves,
        low_size=len(core.low),
        rest_size=len(core.rest),
        s_edges=s_edges,
        s_deletion_degrees=s_del,
        lemmas=lemmas,
    )
