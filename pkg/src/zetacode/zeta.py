"""Edge and Ihara zeta functions.

Three independent routes to the inverse zeta function of a graph:

* the prime-cycle product ``prod_gamma (1 - u^gamma)`` over an exhaustive
  enumeration of prime cycles;
* ``det(I - U B)`` for the Hashimoto matrix ``B``, expanded exactly through
  ``exp(-sum_m Tr((UB)^m) / m)``;
* the Bass determinant ``(1 - u^2)^(|E|-|V|) det(I - A u + Q u^2)`` over the
  vertices, with ``Q = D - I``.

Note that the Bass identity needs the linear ``A u`` term; ``det(I - A + Q u^2)``
does not reproduce the other two routes on any graph with an odd cycle.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence

import numpy as np

from . import kernels
from .errors import GraphError
from .graph import UndirectedMultigraph, hashimoto_matrix, successor_lists
from .series import TruncatedSeries, UnivariatePolynomial


@dataclass(frozen=True, order=True)
class PrimeCycleClass:
    """Rotation class of a closed, backtrackless, tailless, primitive walk.

    ``edges`` is the lexicographically least rotation, in directed-edge ids.
    The reversed walk is a different class.
    """

    edges: tuple[int, ...]
    num_edges: int

    @property
    def length(self) -> int:
        return len(self.edges)

    def undirected(self) -> tuple[int, ...]:
        return tuple(e % self.num_edges for e in self.edges)


def _varmap(g: UndirectedMultigraph, varmap) -> tuple[list[int], int]:
    if varmap is None:
        return list(range(g.num_edges)), max(1, g.num_edges)
    if varmap == "single":
        return [0] * g.num_edges, 1
    vm = [int(v) for v in varmap]
    if len(vm) != g.num_edges:
        raise ValueError(f"varmap has {len(vm)} entries for {g.num_edges} edges")
    if vm and min(vm) < 0:
        raise ValueError("variable indices must be nonnegative")
    return vm, max(vm, default=0) + 1


def _walk_search(g: UndirectedMultigraph, max_len: int, store: bool):
    B = hashimoto_matrix(g)
    ptr, succ = successor_lists(B)
    return kernels.prime_walks(ptr, succ, B.astype(bool), max_len, store)


def prime_cycles(g: UndirectedMultigraph, max_len: int) -> list[PrimeCycleClass]:
    """All prime cycle classes of length ``<= max_len``, each exactly once."""
    if max_len < 2:
        raise ValueError("max_len must be at least 2")
    if g.num_edges == 0:
        return []
    _, flat, lens = _walk_search(g, max_len, True)
    flat = flat.tolist()
    E = g.num_edges
    words = []
    pos = 0
    for L in lens.tolist():
        words.append(tuple(flat[pos:pos + L]))
        pos += L
    words.sort(key=lambda w: (len(w), w))
    return [PrimeCycleClass(w, E) for w in words]


def prime_cycle_counts(g: UndirectedMultigraph, max_len: int) -> list[int]:
    """Number of prime classes of each length ``0..max_len`` (no storage)."""
    if g.num_edges == 0:
        return [0] * (max_len + 1)
    counts, _, _ = _walk_search(g, max_len, False)
    return [int(c) for c in counts]


def zeta_inverse_from_primes(cycles: Sequence[PrimeCycleClass], varmap, D: int, nvars: int | None = None) -> TruncatedSeries:
    """``prod_gamma (1 - monomial(gamma))`` truncated at total degree ``D``.

    ``varmap[k]`` is the variable of undirected edge ``k``; ``None`` gives each
    edge its own variable and ``"single"`` identifies every edge with one
    variable.  Cycles longer than ``D`` are skipped since they cannot
    contribute.
    """
    if varmap is None:
        E = cycles[0].num_edges if cycles else (nvars or 1)
        varmap = range(E)
    if varmap == "single":
        vm = None
        p = 1
    else:
        vm = [int(v) for v in varmap]
        p = nvars if nvars is not None else max(vm, default=0) + 1
    # cycles sharing a monomial x^e contribute (1 - x^e)^k as one factor
    groups: dict[tuple[int, ...], int] = {}
    for cyc in cycles:
        word = cyc.edges
        if len(word) > D:
            continue
        if vm is None:
            exp = (len(word),)
        else:
            E = cyc.num_edges
            exp = [0] * p
            for e in word:
                exp[vm[e % E]] += 1
            exp = tuple(exp)
        groups[exp] = groups.get(exp, 0) + 1
    out = TruncatedSeries.one(p, D)
    parts = out._parts
    for exp in sorted(groups, key=lambda x: (sum(x), x)):
        k = groups[exp]
        L = sum(exp)
        key = out.monomial_key(exp)
        top = min(k, D // L)
        binom = [(-1) ** j * comb(k, j) for j in range(top + 1)]
        for d in range(D, L - 1, -1):
            dst = parts[d]
            for j in range(1, min(top, d // L) + 1):
                src = parts[d - j * L]
                if not src:
                    continue
                shift = j * key
                b = binom[j]
                for mk, c in src.items():
                    nk = mk + shift
                    v = dst.get(nk, 0) + b * c
                    if v:
                        dst[nk] = v
                    else:
                        dst.pop(nk, None)
    return out


def ihara_inverse_from_prime_counts(counts: Sequence[int], D: int) -> UnivariatePolynomial:
    """``prod_l (1 - u^l)^{a_l}`` truncated at degree ``D`` from class counts ``a_l``."""
    c = [0] * (D + 1)
    c[0] = 1
    for L, a in enumerate(counts):
        if L == 0 or L > D:
            continue
        for _ in range(int(a)):
            for d in range(D, L - 1, -1):
                c[d] -= c[d - L]
    return UnivariatePolynomial(c)


def trace_series(g: UndirectedMultigraph, varmap, D: int) -> list[dict]:
    """Homogeneous parts ``Tr((UB)^m)`` for ``m = 1..D`` as packed-monomial dicts.

    Walks are followed one directed edge at a time; leaving edge ``e``
    contributes its variable ``u_{var(e mod |E|)}``.
    """
    vm, p = _varmap(g, varmap)
    proto = TruncatedSeries(p, D)
    B = hashimoto_matrix(g)
    ptr, succ = successor_lists(B)
    E = g.num_edges
    step = [proto.var_key(vm[e % E]) for e in range(2 * E)]
    traces = [dict() for _ in range(D + 1)]
    for s in range(2 * E):
        state = {s: {0: 1}}
        for m in range(1, D + 1):
            nxt: dict[int, dict] = {}
            for cur, poly in state.items():
                shift = step[cur]
                for t in succ[ptr[cur]:ptr[cur + 1]]:
                    t = int(t)
                    tgt = nxt.setdefault(t, {})
                    for k, c in poly.items():
                        nk = k + shift
                        tgt[nk] = tgt.get(nk, 0) + c
            state = nxt
            back = state.get(s)
            if back:
                tr = traces[m]
                for k, c in back.items():
                    tr[k] = tr.get(k, 0) + c
            if not state:
                break
    return traces


def edge_zeta_inverse_det(g: UndirectedMultigraph, varmap=None, D: int | None = None) -> TruncatedSeries:
    """``det(I - U B)`` to total degree ``D``, with exact integer coefficients.

    The default ``D = 2|E|`` is the full polynomial, since ``B`` has size ``2|E|``.

    ``varmap=None`` gives every undirected edge its own variable; ``"single"``
    uses one variable ``u``.  Raises :class:`IntegralityError` if the
    exponential of the trace series fails to be integral.
    """
    vm, p = _varmap(g, varmap)
    if g.num_edges == 0:
        raise GraphError("edge zeta needs at least one edge")
    D = 2 * g.num_edges if D is None else int(D)
    if D < 0:
        raise ValueError("truncation degree must be nonnegative")
    log_det = TruncatedSeries(p, D)
    for m, tr in enumerate(trace_series(g, vm, D)):
        if m and tr:
            log_det._parts[m] = {k: Fraction(-c, m) for k, c in tr.items() if c}
    return log_det.exp().require_integral("det(I - UB)")


def edge_zeta(g: UndirectedMultigraph, varmap=None, D: int | None = None) -> TruncatedSeries:
    """Edge zeta function itself: reciprocal series of the inverse."""
    return edge_zeta_inverse_det(g, varmap, D).reciprocal()


def _bareiss_det(M: list[list[int]]) -> int:
    n = len(M)
    if n == 0:
        return 1
    a = [row[:] for row in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def ihara_zeta_inverse_bass(g: UndirectedMultigraph) -> UnivariatePolynomial:
    """Inverse Ihara zeta ``(1 - u^2)^(|E|-|V|) det(I - A u + Q u^2)``.

    For a connected graph the exponent is ``r - 1`` with ``r`` the cycle rank.
    The vertex determinant is a polynomial of degree at most ``2|V|``; it is
    evaluated at the integers ``0, 1, -1, 2, -2, ...`` by fraction-free
    elimination and interpolated exactly.  Graphs without cycles give 1.
    """
    if g.cycle_rank == 0:
        return UnivariatePolynomial([1])
    A = g.adjacency_matrix().tolist()
    deg = g.degrees().tolist()
    n = g.num_vertices
    npts = 2 * n + 1
    xs = [0]
    k = 1
    while len(xs) < npts:
        xs.extend([k, -k])
        k += 1
    xs = xs[:npts]
    ys = []
    for u in xs:
        M = [[(1 + (deg[i] - 1) * u * u if i == j else 0) - A[i][j] * u for j in range(n)] for i in range(n)]
        ys.append(_bareiss_det(M))
    det = UnivariatePolynomial.interpolate(xs, ys)
    e = g.num_edges - g.num_vertices
    f = UnivariatePolynomial([1, 0, -1])
    if e >= 0:
        return det * f ** e
    return det.exact_div(f ** (-e))


def closed_walk_counts(g: UndirectedMultigraph, m_max: int) -> list[int]:
    """``N_m = Tr(B^m)`` for ``m = 1..m_max`` in exact integer arithmetic."""
    if m_max < 1:
        raise ValueError("m_max must be at least 1")
    if g.num_edges == 0:
        return [0] * m_max
    B = hashimoto_matrix(g).astype(object)
    P = B.copy()
    out = [int(np.trace(P))]
    for _ in range(m_max - 1):
        P = P.dot(B)
        out.append(int(np.trace(P)))
    return out
