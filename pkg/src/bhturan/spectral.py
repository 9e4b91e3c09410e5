"""Perron data, closed-form spectral radii and the bound checkers.

The friendship bound is reported in two variants that differ only in the sign
inside the radicand::

    bound_plus  = (k - 1 + sqrt(4m - k^2 + 1)) / 2
    bound_minus = (k - 1 + sqrt(4m - k^2 - 1)) / 2

``bound_plus`` is exactly the spectral radius of ``K_k ∨ tK_1`` with
``m = kt + k(k-1)/2`` and is the operative pass/fail bound; ``bound_minus`` is
carried alongside so reports show how far the other reading is from the data.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .detect import clique_number, is_fk_free, is_triangle_free
from .errors import CapacityError, CertificateMismatch, ConvergenceError, ParameterError
from .graph import Graph, bits

EQUALITY_TOL = 1e-6
TIE_TOL = 1e-12
DENSE_LIMIT = 16


@dataclass(frozen=True)
class PerronCertificate:
    rho: float
    x: tuple[float, ...]
    ustar: int
    residual: float
    iterations: int

    @property
    def n(self) -> int:
        return len(self.x)


def _residual(a: np.ndarray, x: np.ndarray, rho: float) -> float:
    if x.size == 0:
        return 0.0
    return float(np.max(np.abs(a @ x - rho * x)))


def _power(a: np.ndarray, tol: float, max_iter: int, start: np.ndarray) -> tuple[float, np.ndarray, float, int]:
    x = start / np.max(start)
    rho = 0.0
    res = math.inf
    it = 0
    # shift by I so a bipartite component does not oscillate between +rho and -rho
    while it < max_iter:
        ax = a @ x
        rho = float(x @ ax / (x @ x))
        res = float(np.max(np.abs(ax - rho * x)))
        if res <= tol:
            break
        y = ax + x
        x = y / np.max(y)
        it += 1
    if res > tol:
        raise ConvergenceError(f"power iteration did not converge in {max_iter} iterations", res)

    # one inverse-iteration step pushes the vector to working precision, which
    # makes ties between symmetric vertices resolvable at TIE_TOL
    sigma = rho * (1 + 1e-9) + 1e-12
    try:
        y = np.linalg.solve(sigma * np.eye(len(x)) - a, x)
    except np.linalg.LinAlgError:
        return rho, x, res, it
    if np.all(np.isfinite(y)) and np.max(y) > 0:
        y = y / np.max(y)
        ay = a @ y
        r2 = float(y @ ay / (y @ y))
        res2 = float(np.max(np.abs(ay - r2 * y)))
        if res2 <= res and np.min(y) > 0:
            return r2, y, res2, it
    return rho, x, res, it


def perron(g: Graph, tol: float = 1e-10, max_iter: int = 10**6, start=None) -> PerronCertificate:
    """Spectral radius and Perron vector, normalised so the largest entry is 1.

    Each component is iterated separately from the all-ones vector (or the
    positive ``start`` vector restricted to it); the certificate describes the
    component with the largest spectral radius and ``x`` is zero elsewhere.
    """
    n = g.n
    if n < 1:
        raise ParameterError("perron needs at least one vertex")
    if tol <= 0:
        raise ParameterError("tol must be positive")
    if start is not None:
        start = np.asarray(start, dtype=float)
        if start.shape != (n,) or np.any(start <= 0):
            raise ParameterError("start must be a strictly positive vector of length n")
    if g.m == 0:
        x = [0.0] * n
        x[0] = 1.0
        return PerronCertificate(0.0, tuple(x), 0, 0.0, 0)

    a = g.adjacency_matrix()
    best = None
    for comp in g.components():
        if comp.bit_count() < 2:
            continue
        idx = list(bits(comp))
        sub = a[np.ix_(idx, idx)]
        s = np.ones(len(idx)) if start is None else start[idx]
        rho, xc, _, it = _power(sub, tol, max_iter, s)
        if best is None or rho > best[0] + 1e-9:
            best = (rho, idx, xc, it)

    rho, idx, xc, it = best
    x = np.zeros(n)
    x[idx] = xc
    top = float(np.max(x))
    ustar = int(np.flatnonzero(x >= top - TIE_TOL)[0])
    x = x / x[ustar]
    x = np.minimum(x, 1.0)
    res = _residual(a, x, rho)
    if res > tol:
        raise ConvergenceError("renormalised vector lost the residual bound", res)
    return PerronCertificate(rho, tuple(float(v) for v in x), ustar, res, it)


def spectral_radius(g: Graph) -> float:
    return perron(g).rho if g.n else 0.0


def perron_bounds_hold(g: Graph, cert: PerronCertificate, slack: float = 1e-9) -> bool:
    """Average degree ``<= rho <=`` maximum degree."""
    if g.n == 0:
        return True
    return 2 * g.m / g.n - slack <= cert.rho <= g.max_degree() + slack


def quotient_rho(k: int, t: int) -> float:
    """Spectral radius of ``K_k ∨ tK_1`` from its 2x2 equitable quotient.

    Largest root of ``λ² - (k-1)λ - kt = 0``. With ``m = kt + k(k-1)/2`` this
    equals ``(k - 1 + sqrt(4m - k² + 1)) / 2``.
    """
    if k < 1 or t < 1:
        raise ParameterError("quotient_rho needs k >= 1 and t >= 1")
    return (k - 1 + math.sqrt((k - 1) ** 2 + 4 * k * t)) / 2


def jacobi_eigenvalues(a: np.ndarray, tol: float = 1e-14, max_sweeps: int = 100) -> np.ndarray:
    """All eigenvalues of a real symmetric matrix by cyclic Jacobi rotations (descending)."""
    a = np.array(a, dtype=float)
    n = a.shape[0]
    scale = max(1.0, float(np.linalg.norm(a)))
    for _ in range(max_sweeps):
        off = math.sqrt(float(np.sum(np.tril(a, -1) ** 2)))
        if off <= tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= 1e-300:
                    continue
                theta = (a[q, q] - a[p, p]) / (2 * apq)
                t = (1.0 if theta >= 0 else -1.0) / (abs(theta) + math.sqrt(theta * theta + 1))
                c = 1 / math.sqrt(t * t + 1)
                s = t * c
                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                row_p = a[p, :].copy()
                row_q = a[q, :].copy()
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
    return np.sort(np.diag(a))[::-1]


def top_two_eigenvalues(g: Graph) -> tuple[float, float]:
    """``(λ₁, λ₂)`` of the adjacency matrix, ``2 <= n <= 16``."""
    if g.n > DENSE_LIMIT:
        raise CapacityError(f"top_two_eigenvalues supports n <= {DENSE_LIMIT}, got {g.n}")
    if g.n < 2:
        raise ParameterError("a second eigenvalue needs n >= 2")
    ev = jacobi_eigenvalues(g.adjacency_matrix())
    return float(ev[0]), float(ev[1])


# -- eigenvalue identities --------------------------------------------------

def _star_partition(g: Graph, cert: PerronCertificate) -> tuple[int, int]:
    if cert.n != g.n:
        raise CertificateMismatch(f"certificate has {cert.n} entries for a graph on {g.n} vertices")
    if abs(cert.x[cert.ustar] - 1.0) > 1e-12:
        raise CertificateMismatch("certificate is not normalised at ustar")
    u = g.rows[cert.ustar]
    w = ((1 << g.n) - 1) & ~u & ~(1 << cert.ustar)
    return u, w


def star_sum_residual(g: Graph, cert: PerronCertificate) -> float:
    """``|rho - Σ_{u ∈ N(u*)} x_u|``."""
    u, _ = _star_partition(g, cert)
    return abs(cert.rho - sum(cert.x[v] for v in bits(u)))


def check_identity_eq2(g: Graph, cert: PerronCertificate) -> float:
    """Residual of ``ρ² = d(u*) + Σ_U d_U(u)x_u + Σ_W d_U(w)x_w``."""
    u, w = _star_partition(g, cert)
    x = cert.x
    rhs = g.degree(cert.ustar)
    rhs += sum(g.degree_in(v, u) * x[v] for v in bits(u))
    rhs += sum(g.degree_in(v, u) * x[v] for v in bits(w))
    return abs(cert.rho**2 - rhs)


def check_identity_eq3(g: Graph, cert: PerronCertificate, k: int) -> float:
    """Residual of ``ρ² - (k-1)ρ = d(u*) + Σ_U (d_U(u)-k+1)x_u + Σ_W d_U(w)x_w``."""
    u, w = _star_partition(g, cert)
    x = cert.x
    rhs = g.degree(cert.ustar)
    rhs += sum((g.degree_in(v, u) - k + 1) * x[v] for v in bits(u))
    rhs += sum(g.degree_in(v, u) * x[v] for v in bits(w))
    return abs(cert.rho**2 - (k - 1) * cert.rho - rhs)


# -- bound checkers ---------------------------------------------------------

@dataclass(frozen=True)
class BoundCheck:
    """Outcome of a single closed-form bound ``rho <= bound``."""

    name: str
    m: int
    rho: float
    bound: float | None
    slack: float | None
    equality: bool
    applicable: bool
    note: str = ""

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def _simple_check(name: str, g: Graph, bound: float, applicable: bool, note: str, rho: float | None) -> BoundCheck:
    if rho is None:
        rho = spectral_radius(g)
    slack = bound - rho
    return BoundCheck(name, g.m, rho, bound, slack, abs(slack) <= EQUALITY_TOL, applicable, note)


def check_nosal(g: Graph, rho: float | None = None) -> BoundCheck:
    """``rho <= sqrt(m)`` for triangle-free graphs."""
    ok = is_triangle_free(g)
    return _simple_check("nosal", g, math.sqrt(g.m), ok, "" if ok else "graph contains a triangle", rho)


def check_nikiforov(g: Graph, r: int, rho: float | None = None) -> BoundCheck:
    """``rho <= sqrt(2m(1 - 1/r))`` for ``K_{r+1}``-free graphs."""
    if r < 1:
        raise ParameterError("r must be >= 1")
    omega = clique_number(g)
    ok = omega <= r
    note = "" if ok else f"clique number {omega} > r={r}"
    return _simple_check("nikiforov", g, math.sqrt(2 * g.m * (1 - 1 / r)), ok, note, rho)


def main_bound_values(m: int, k: int) -> tuple[float | None, float | None]:
    """``(bound_plus, bound_minus)``; a variant is ``None`` when its radicand is negative."""
    out = []
    for shift in (1, -1):
        rad = 4 * m - k * k + shift
        out.append(None if rad < 0 else (k - 1 + math.sqrt(rad)) / 2)
    return out[0], out[1]


@dataclass(frozen=True)
class BoundReport:
    m: int
    k: int
    rho: float
    bound_plus: float | None
    bound_minus: float | None
    slack_plus: float | None
    slack_minus: float | None
    equality_flag: bool
    fk_free: bool

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def check_main_bound(g: Graph, k: int, rho: float | None = None) -> BoundReport:
    """Evaluate the friendship bound on ``g``; non-``F_k``-free inputs are reported, not rejected."""
    if k < 2:
        raise ParameterError("check_main_bound needs k >= 2")
    if rho is None:
        rho = spectral_radius(g)
    plus, minus = main_bound_values(g.m, k)
    sp = None if plus is None else plus - rho
    sm = None if minus is None else minus - rho
    eq = sp is not None and abs(sp) <= EQUALITY_TOL
    return BoundReport(g.m, k, rho, plus, minus, sp, sm, eq, is_fk_free(g, k))
