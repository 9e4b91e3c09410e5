"""Exhaustive small-graph experiments.

Graphs are enumerated up to isomorphism by edge augmentation: every class with
``m + 1`` edges is a canonical class with ``m`` edges plus one edge. All the
named predicates are closed under deleting edges, so a class that fails the
predicate is never expanded, and every satisfying class is still reached.
"""

from __future__ import annotations

import re
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Callable, Iterator

import numpy as np

from . import detect
from .canon import canonical_form
from .errors import CapacityError, ParameterError
from .graph import Graph, empty
from .graph6 import from_graph6, to_graph6
from .spectral import check_main_bound, perron, top_two_eigenvalues

ENUM_LIMIT = 9
LABELED_LIMIT = 6
VIOLATION_TOL = 1e-9
TIE_TOL = 1e-9


# -- predicates -------------------------------------------------------------

_PREDICATES: dict[str, tuple[bool, Callable[[Graph, int | None], bool]]] = {
    "all": (False, lambda g, p: True),
    "fk_free": (True, lambda g, p: detect.is_fk_free(g, p)),
    "kk2_free": (True, lambda g, p: detect.is_kk2_free(g, p)),
    "circumference_le": (True, lambda g, p: detect.circumference(g).circumference <= p),
    "triangle_free": (False, lambda g, p: detect.is_triangle_free(g)),
    "fan_free": (True, lambda g, p: not detect.contains_fan(g, p)),
}


@dataclass(frozen=True)
class Predicate:
    """A named, edge-deletion-closed graph property, e.g. ``fk_free(2)``.

    ``fan_free(q)`` excludes ``K_1 ∨ P_q``.
    """

    name: str
    param: int | None = None

    def __post_init__(self):
        if self.name not in _PREDICATES:
            raise ParameterError(f"unknown predicate {self.name!r}; choose from {sorted(_PREDICATES)}")
        needs = _PREDICATES[self.name][0]
        if needs and self.param is None:
            raise ParameterError(f"predicate {self.name} needs an integer parameter")
        if not needs and self.param is not None:
            raise ParameterError(f"predicate {self.name} takes no parameter")

    @classmethod
    def parse(cls, text: str) -> "Predicate":
        m = re.fullmatch(r"\s*([a-z_0-9]+)\s*(?:\(\s*(-?\d+)\s*\))?\s*", text)
        if not m:
            raise ParameterError(f"cannot parse predicate {text!r}")
        return cls(m.group(1), None if m.group(2) is None else int(m.group(2)))

    def __call__(self, g: Graph) -> bool:
        return _PREDICATES[self.name][1](g, self.param)

    def __str__(self) -> str:
        return self.name if self.param is None else f"{self.name}({self.param})"


def _pred(p: Predicate | str) -> Predicate:
    return p if isinstance(p, Predicate) else Predicate.parse(p)


@dataclass(frozen=True)
class EnumerationSpec:
    n: int
    predicate: Predicate = Predicate("all")
    dedup: bool = True

    def __post_init__(self):
        if self.n < 0:
            raise ParameterError("n must be non-negative")
        if self.dedup and self.n > ENUM_LIMIT:
            raise CapacityError(f"dedup enumeration supports n <= {ENUM_LIMIT}")
        if not self.dedup and self.n > LABELED_LIMIT:
            raise CapacityError(f"labelled enumeration supports n <= {LABELED_LIMIT}")


@lru_cache(maxsize=None)
def _classes(n: int, predicate: Predicate) -> tuple[str, ...]:
    """Canonical graph6 strings of all satisfying classes, by edge count then form."""
    start = empty(n)
    if not predicate(start):
        return ()
    out = [to_graph6(start)]
    level = [start]
    while level:
        found: dict[bytes, None] = {}
        for g in level:
            for u, v in g.non_edges():
                found.setdefault(canonical_form(g.with_edge(u, v)), None)
        forms = sorted(found)
        level = []
        for c in forms:
            h = from_graph6(c.decode("ascii"))
            if predicate(h):
                level.append(h)
                out.append(c.decode("ascii"))
    return tuple(out)


def enumerate_graphs(spec: EnumerationSpec) -> Iterator[Graph]:
    """Yield the graphs described by ``spec`` in a deterministic order.

    With ``dedup`` one canonical representative per isomorphism class is
    produced (ordered by edge count, then canonical form); without it every
    labelled graph on ``n`` vertices is produced in bitmask order.
    """
    if spec.dedup:
        for s in _classes(spec.n, spec.predicate):
            yield from_graph6(s)
        return
    pairs = list(combinations(range(spec.n), 2))
    for code in range(1 << len(pairs)):
        g = Graph.from_edges(spec.n, [pairs[i] for i in range(len(pairs)) if code >> i & 1])
        if spec.predicate(g):
            yield g


def graphs(n: int, predicate: Predicate | str = "all") -> list[Graph]:
    return list(enumerate_graphs(EnumerationSpec(n, _pred(predicate))))


# -- Turán numbers ----------------------------------------------------------

@dataclass(frozen=True)
class TuranResult:
    n: int
    predicate: str
    max_edges: int
    witnesses: tuple[str, ...]

    def to_dict(self) -> dict:
        return {"n": self.n, "predicate": self.predicate, "max_edges": self.max_edges, "witnesses": list(self.witnesses)}


def turan_number(n: int, predicate: Predicate | str) -> TuranResult:
    """Largest edge count of an ``n``-vertex graph satisfying ``predicate``, with all maximisers."""
    pred = _pred(predicate)
    spec = EnumerationSpec(n, pred)
    forms = _classes(spec.n, pred)
    if not forms:
        return TuranResult(n, str(pred), -1, ())
    gs = [from_graph6(s) for s in forms]
    best = max(g.m for g in gs)
    wits = tuple(s for s, g in zip(forms, gs) if g.m == best)
    for s in wits:
        if not pred(from_graph6(s)):
            raise AssertionError(f"witness {s} fails {pred}")
    return TuranResult(n, str(pred), best, wits)


# -- scan records -----------------------------------------------------------

@dataclass
class ScanRecord:
    graph6: str
    n: int
    m: int
    rho: float
    bounds: dict[str, float | None] = field(default_factory=dict)
    slacks: dict[str, float | None] = field(default_factory=dict)
    flags: dict[str, object] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "graph6": self.graph6,
            "n": self.n,
            "m": self.m,
            "rho": self.rho,
            "bounds": dict(self.bounds),
            "slacks": dict(self.slacks),
            "flags": dict(self.flags),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ScanRecord":
        return cls(d["graph6"], d["n"], d["m"], d["rho"], dict(d["bounds"]), dict(d["slacks"]), dict(d["flags"]))


def main_bound_record(g: Graph, k: int, label: str | None = None) -> ScanRecord:
    rep = check_main_bound(g, k)
    violated = rep.fk_free and rep.slack_plus is not None and rep.slack_plus < -VIOLATION_TOL
    return ScanRecord(
        label if label is not None else to_graph6(g),
        g.n,
        g.m,
        rep.rho,
        {"plus": rep.bound_plus, "minus": rep.bound_minus},
        {"plus": rep.slack_plus, "minus": rep.slack_minus},
        {"fk_free": rep.fk_free, "equality": rep.equality_flag, "violation": violated},
    )


def _bound_record_job(args: tuple[str, int]) -> dict:
    s, k = args
    return main_bound_record(from_graph6(s), k).to_dict()


def _bn_record_job(s: str) -> dict:
    return bn_record(from_graph6(s)).to_dict()


def _map(fn, items: list, workers: int) -> list:
    if workers < 1:
        raise ParameterError("workers must be >= 1")
    if workers == 1 or len(items) < 2:
        return [fn(it) for it in items]
    chunk = max(1, len(items) // (workers * 8))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items, chunksize=chunk))


def _no_isolated(g: Graph) -> bool:
    return all(r for r in g.rows)


@dataclass
class ScanResult:
    kind: str
    params: dict
    violations: list[ScanRecord]
    summary: dict[int, dict]
    total: int

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "params": dict(self.params),
            "violations": [r.to_dict() for r in self.violations],
            "summary": {str(m): v for m, v in sorted(self.summary.items())},
            "total": self.total,
        }


def _summarise(records: list[ScanRecord]) -> dict[int, dict]:
    by_m: dict[int, list[ScanRecord]] = defaultdict(list)
    for r in records:
        by_m[r.m].append(r)
    out = {}
    for m, rs in sorted(by_m.items()):
        top = max(rs, key=lambda r: (r.rho, r.graph6))
        slacks = [r.slacks.get("plus") for r in rs if r.slacks.get("plus") is not None]
        out[m] = {
            "count": len(rs),
            "max_rho": top.rho,
            "maximizer": top.graph6,
            "min_slack_plus": min(slacks) if slacks else None,
            "violations": sum(1 for r in rs if r.flags.get("violation")),
        }
    return out


def _bound_family_scan(kind: str, k: int, n_max: int, predicate: Predicate, workers: int, params: dict) -> ScanResult:
    if k < 2:
        raise ParameterError("k must be >= 2")
    if n_max > 8:
        raise CapacityError("exhaustive scans support n_max <= 8")
    forms = []
    for n in range(2, n_max + 1):
        forms += [s for s in _classes(n, predicate) if _no_isolated(from_graph6(s))]
    forms.sort()
    records = [ScanRecord.from_dict(d) for d in _map(_bound_record_job, [(s, k) for s in forms], workers)]
    # the predicate has already excluded F_k or the fan; the record's fk_free flag is informational
    for r in records:
        r.flags["violation"] = r.slacks["plus"] is not None and r.slacks["plus"] < -VIOLATION_TOL
    violations = [r for r in records if r.flags["violation"]]
    return ScanResult(kind, params, violations, _summarise(records), len(records))


def bound_scan(k: int, n_max: int, workers: int = 1) -> ScanResult:
    """Check ``rho <= bound_plus`` on every ``F_k``-free graph with ``2 <= n <= n_max`` and no isolated vertex."""
    return _bound_family_scan("bound_scan", k, n_max, Predicate("fk_free", k), workers, {"k": k, "n_max": n_max})


def fan_conjecture_scan(k: int, n_max: int, variant: str = "odd", workers: int = 1) -> ScanResult:
    """Same as :func:`bound_scan` over ``V_{2k+1}``-free (``odd``) or ``V_{2k+2}``-free (``even``) graphs."""
    if variant not in ("odd", "even"):
        raise ParameterError("variant must be 'odd' or 'even'")
    q = 2 * k if variant == "odd" else 2 * k + 1
    return _bound_family_scan(
        "fan_conjecture_scan", k, n_max, Predicate("fan_free", q), workers, {"k": k, "n_max": n_max, "variant": variant, "path_order": q}
    )


def bn_record(g: Graph) -> ScanRecord:
    """Check ``λ₁² + λ₂² <= 2m(1 - 1/ω)`` (applicable when ``n >= ω + 1``)."""
    omega = detect.clique_number(g)
    l1, l2 = top_two_eigenvalues(g)
    lhs = l1 * l1 + l2 * l2
    bound = 2 * g.m * (1 - 1 / omega) if omega >= 1 else 0.0
    applicable = g.n >= omega + 1
    return ScanRecord(
        to_graph6(g),
        g.n,
        g.m,
        l1,
        {"bn": bound},
        {"bn": bound - lhs},
        {"lambda2": l2, "lhs": lhs, "r": omega, "applicable": applicable, "violation": applicable and lhs > bound + VIOLATION_TOL},
    )


def bn_conjecture_scan(n_max: int, workers: int = 1) -> ScanResult:
    """Every graph on ``2..n_max`` vertices, ``r`` taken as the clique number."""
    if n_max > 7:
        raise CapacityError("bn_conjecture_scan supports n_max <= 7")
    forms = sorted(s for n in range(2, n_max + 1) for s in _classes(n, Predicate("all")))
    records = [ScanRecord.from_dict(d) for d in _map(_bn_record_job, forms, workers)]
    violations = [r for r in records if r.flags["violation"]]
    summary = {}
    for m, rs in sorted(_group_by_m(records).items()):
        app = [r for r in rs if r.flags["applicable"]]
        summary[m] = {
            "count": len(rs),
            "applicable": len(app),
            "min_slack": min((r.slacks["bn"] for r in app), default=None),
            "violations": sum(1 for r in rs if r.flags["violation"]),
        }
    return ScanResult("bn_conjecture_scan", {"n_max": n_max}, violations, summary, len(records))


def _group_by_m(records: list[ScanRecord]) -> dict[int, list[ScanRecord]]:
    out: dict[int, list[ScanRecord]] = defaultdict(list)
    for r in records:
        out[r.m].append(r)
    return out


def spectral_max(n: int, predicate: Predicate | str) -> dict[int, list[ScanRecord]]:
    """For each edge count, the satisfying ``n``-vertex graphs of largest spectral radius."""
    pred = _pred(predicate)
    best: dict[int, list[tuple[float, str]]] = defaultdict(list)
    for s in _classes(EnumerationSpec(n, pred).n, pred):
        g = from_graph6(s)
        rho = perron(g).rho if g.n else 0.0
        best[g.m].append((rho, s))
    out = {}
    for m, items in sorted(best.items()):
        top = max(r for r, _ in items)
        out[m] = [
            ScanRecord(s, n, m, r, flags={"predicate": str(pred)}) for r, s in sorted(items, key=lambda t: t[1]) if r >= top - TIE_TOL
        ]
    return out


# -- local search -----------------------------------------------------------

def _random_fk_free(k: int, n: int, m: int, rng: np.random.Generator, attempts: int = 100) -> Graph:
    half = n // 2
    bip = [(u, v) for u in range(half) for v in range(half, n)]
    if m <= len(bip):
        idx = rng.choice(len(bip), size=m, replace=False)
        return Graph.from_edges(n, [bip[i] for i in sorted(idx)])
    inside = [(u, v) for u, v in combinations(range(n), 2) if (u < half) == (v < half)]
    for _ in range(attempts):
        g = Graph.from_edges(n, bip)
        for i in rng.permutation(len(inside)):
            if g.m == m:
                break
            h = g.with_edge(*inside[i])
            if detect.is_fk_free(h, k):
                g = h
        if g.m == m:
            return g
    raise ParameterError(f"could not build an F_{k}-free start graph with n={n}, m={m}")


def local_search(k: int, n: int, m: int, seed: int = 0, steps: int = 1000, start: Graph | None = None) -> ScanRecord:
    """Greedy edge-rotation search for large spectral radius among ``F_k``-free graphs.

    A move deletes one edge and inserts one non-edge, so ``m`` is fixed. Moves
    creating ``F_k`` are rejected; others are kept when the spectral radius does
    not drop by more than a plateau tolerance. The best graph seen is returned.
    """
    if m > n * (n - 1) // 2:
        raise ParameterError("m exceeds the number of vertex pairs")
    rng = np.random.default_rng(seed)
    if start is None:
        g = _random_fk_free(k, n, m, rng)
    else:
        if start.n != n or start.m != m:
            raise ParameterError("start graph must have the requested n and m")
        if not detect.is_fk_free(start, k):
            raise ParameterError("start graph contains F_k")
        g = start
    cur = perron(g).rho
    best_g, best = g, cur
    accepted = 0
    for _ in range(steps):
        es = g.edges()
        ns = g.non_edges()
        if not es or not ns:
            break
        a = es[int(rng.integers(len(es)))]
        b = ns[int(rng.integers(len(ns)))]
        h = g.without_edge(*a).with_edge(*b)
        if not detect.is_fk_free(h, k):
            continue
        r = perron(h).rho
        if r >= cur - 1e-12:
            g, cur = h, r
            accepted += 1
            if r > best + 1e-12:
                best_g, best = h, r
    rec = main_bound_record(best_g, k)
    rec.flags.update({"seed": seed, "steps": steps, "accepted": accepted})
    return rec
