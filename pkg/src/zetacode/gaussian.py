"""Gaussian representations of ``det(I - uM)^{-1}`` and their moment expansion.

Two estimators are provided.

``paper_real`` averages ``exp{(u/2) Tr[(Y Z' + Z Y') M]} = exp(u Y' S Z)`` with
``S = (M + M')/2`` and independent real standard normal ``Y, Z``.  Its exact
expectation is ``det(I - u^2 S^2)^{-1/2}``, which equals ``det(I - uM)^{-1}``
only in special cases (e.g. symmetric traceless ``M`` to second order); the
two are compared rather than conflated.

``complex`` averages ``Re exp(u z^H M z)`` with ``z = (Y + iZ)/sqrt(2)``
standard complex normal, whose expectation is exactly ``det(I - uM)^{-1}``
whenever ``I - u S`` is positive definite.

The power series of the ``paper_real`` expectation in ``u`` has coefficients
``E[(Y' A Z)^k] / (2^k k!)``, ``A = M + M'``, evaluated exactly by summing over
Isserlis pairings within the ``Y`` family and within the ``Z`` family.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import NamedTuple

import numpy as np

from .errors import ConvergenceError
from .graph import UndirectedMultigraph, hashimoto_matrix, spectral_radius
from .zeta import prime_cycle_counts

MAX_WICK_ORDER = 8


class MCResult(NamedTuple):
    mean: float
    stderr: float


def _square(m) -> np.ndarray:
    a = np.asarray(m, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"need a square matrix, got shape {a.shape}")
    return a


def direct_inverse_det(m, u: float) -> float:
    a = _square(m)
    return float(1.0 / np.linalg.det(np.eye(a.shape[0]) - u * a))


def paper_real_expectation(m, u: float) -> float:
    """Closed form of the ``paper_real`` expectation, ``det(I - u^2 S^2)^{-1/2}``."""
    a = _square(m)
    S = 0.5 * (a + a.T)
    sign, logdet = np.linalg.slogdet(np.eye(a.shape[0]) - u * u * S @ S)
    if sign <= 0:
        raise ConvergenceError("real-Gaussian expectation diverges at this u")
    return float(np.exp(-0.5 * logdet))


def gaussian_det_estimator(m, u: float, S: int, variant: str = "complex", seed: int = 0,
                           chunk: int = 1 << 16) -> MCResult:
    """Monte Carlo mean and standard error of a Gaussian determinant identity."""
    a = _square(m)
    n = a.shape[0]
    if S < 1:
        raise ValueError("sample count must be at least 1")
    if variant not in ("complex", "paper_real"):
        raise ValueError(f"unknown variant {variant!r}")
    rho = spectral_radius(a)
    if abs(u) * rho >= 1.0:
        raise ConvergenceError(f"|u| = {abs(u)} is outside the convergence radius 1/rho = {np.inf if rho == 0 else 1 / rho}")
    sym = 0.5 * (a + a.T)
    if variant == "complex":
        if np.linalg.eigvalsh(np.eye(n) - u * sym).min() <= 0:
            raise ConvergenceError("I - u(M + M')/2 is not positive definite; the complex identity diverges")
    elif abs(u) * np.linalg.norm(sym, 2) >= 1.0:
        raise ConvergenceError("|u| * ||(M + M')/2|| >= 1; the real-Gaussian identity diverges")
    if not a.any():
        return MCResult(1.0, 0.0)
    rng = np.random.default_rng(seed)
    total = 0.0
    total_sq = 0.0
    done = 0
    while done < S:
        b = min(chunk, S - done)
        Y = rng.standard_normal((b, n))
        Z = rng.standard_normal((b, n))
        if variant == "paper_real":
            vals = np.exp(u * np.einsum("bi,ij,bj->b", Y, sym, Z))
        else:
            real = 0.5 * (np.einsum("bi,ij,bj->b", Y, a, Y) + np.einsum("bi,ij,bj->b", Z, a, Z))
            imag = 0.5 * (np.einsum("bi,ij,bj->b", Y, a, Z) - np.einsum("bi,ij,bj->b", Z, a, Y))
            vals = np.exp(u * real) * np.cos(u * imag)
        total += vals.sum()
        total_sq += (vals * vals).sum()
        done += b
    mean = total / S
    var = max(total_sq / S - mean * mean, 0.0) * S / max(S - 1, 1)
    return MCResult(float(mean), float(np.sqrt(var / S)) if S > 1 else 0.0)


# ---------------------------------------------------------------------------
# Isserlis pairings
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def perfect_matchings(k: int) -> tuple[tuple[int, ...], ...]:
    """All perfect matchings of ``0..k-1`` as partner arrays; empty for odd ``k``."""
    if k % 2:
        return ()
    out = []

    def rec(partner, free):
        if not free:
            out.append(tuple(partner))
            return
        a = free[0]
        for idx in range(1, len(free)):
            b = free[idx]
            partner[a], partner[b] = b, a
            rec(partner, free[1:idx] + free[idx + 1:])
        partner[a] = partner[free[0]] = -1

    rec([-1] * k, list(range(k)))
    return tuple(out)


def _slot_cycles(sigma, tau) -> list[list[int]]:
    """Cycles of slots, alternating a Y-pairing step and a Z-pairing step."""
    k = len(sigma)
    seen = [False] * k
    cycles = []
    for start in range(k):
        if seen[start]:
            continue
        cyc = []
        a = start
        while True:
            seen[a] = True
            cyc.append(a)
            b = sigma[a]
            seen[b] = True
            cyc.append(b)
            a = tau[b]
            if a == start:
                break
        cycles.append(cyc)
    return cycles


def _fraction_matrix(m) -> list[list[Fraction]]:
    a = np.asarray(m)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"need a square matrix, got shape {a.shape}")
    return [[Fraction(x) if not isinstance(x, Fraction) else x for x in row] for row in a.tolist()]


def _matmul(a, b):
    n = len(a)
    return [[sum(a[i][t] * b[t][j] for t in range(n)) for j in range(n)] for i in range(n)]


def _trace(a) -> Fraction:
    return sum((a[i][i] for i in range(len(a))), Fraction(0))


def gaussian_moment(m, k: int) -> Fraction:
    """Exact ``E_{Y,Z}[(Tr[(Y Z' + Z Y') M])^k]`` for real standard normal ``Y, Z``."""
    if k < 0 or k > MAX_WICK_ORDER:
        raise ValueError(f"order must be in 0..{MAX_WICK_ORDER}, got {k}")
    if k == 0:
        return Fraction(1)
    if k % 2:
        return Fraction(0)
    M = _fraction_matrix(m)
    n = len(M)
    A = [[M[i][j] + M[j][i] for j in range(n)] for i in range(n)]
    # each slot cycle of length c contracts to Tr(A^c); A is symmetric
    powers = {}
    P = A
    for c in range(1, k + 1):
        powers[c] = _trace(P)
        P = _matmul(P, A)
    total = Fraction(0)
    for sigma in perfect_matchings(k):
        for tau in perfect_matchings(k):
            term = Fraction(1)
            for cyc in _slot_cycles(sigma, tau):
                term *= powers[len(cyc)]
            total += term
    return total


@dataclass(frozen=True)
class WickCoefficient:
    order: int
    value: Fraction


def wick_coefficient(m, k: int) -> WickCoefficient:
    """Exact ``u^k`` coefficient ``E[(Tr[(YZ'+ZY')M])^k] / (2^k k!)``."""
    return WickCoefficient(k, gaussian_moment(m, k) / (2 ** k * factorial(k)))


# ---------------------------------------------------------------------------
# fourth-order pattern census
# ---------------------------------------------------------------------------

def _canonical_word(word: str) -> str:
    # trace is invariant under rotation, and under transposition (reverse, swap B <-> b)
    flip = word[::-1].translate(str.maketrans("Bb", "bB"))
    return min(min(w[i:] + w[:i] for i in range(len(w))) for w in (word, flip))


def _word_trace(word: str, B, Bt) -> int:
    P = np.eye(B.shape[0], dtype=object)
    for ch in word:
        P = P.dot(B if ch == "B" else Bt)
    return int(np.trace(P))


@dataclass(frozen=True)
class CensusRow:
    pattern: tuple[str, ...]
    structure: str
    multiplicity: int
    trace_product: int
    contribution: Fraction


@dataclass(frozen=True)
class FourCycleCensus:
    rows: tuple[CensusRow, ...]
    total: Fraction
    prime_counts: tuple[int, ...]
    closed_walks: dict
    matches_prime_cycles: bool


def four_cycle_term_census(g: UndirectedMultigraph) -> FourCycleCensus:
    """Split the fourth-order Wick coefficient of the Hashimoto matrix by pattern.

    Writing ``A = B + B'``, every pairing pair and every choice of ``B`` or
    ``B'`` per slot contracts to a product of traces of words over
    ``{B, b = B'}``.  Patterns made of a pure ``BBBB`` word are closed
    non-backtracking 4-walks (``"4-cycle"``); two pure ``BB`` words are
    products of 2-cycles (``"2-cycle product"``); words mixing ``B`` and
    ``b`` reverse direction and are ``"mixed"``.

    ``closed_walks`` holds ``Tr(B^2)`` and ``Tr(B^4)``; they are matched
    against ``sum_{d | l} d a_d`` with ``a_d`` the prime class counts.
    """
    if g.num_edges > 8:
        raise ValueError("census is limited to graphs with at most 8 edges")
    if g.num_edges == 0:
        return FourCycleCensus((), Fraction(0), (0,) * 5, {2: 0, 4: 0}, True)
    B = hashimoto_matrix(g).astype(object)
    Bt = B.T.copy()
    k = 4
    norm = 2 ** k * factorial(k)
    groups: dict[tuple[str, ...], int] = defaultdict(int)
    for sigma in perfect_matchings(k):
        for tau in perfect_matchings(k):
            cycles = _slot_cycles(sigma, tau)
            for choice in range(1 << k):
                words = []
                for cyc in cycles:
                    # slot product alternates X^T, X along the cycle
                    w = []
                    for pos, slot in enumerate(cyc):
                        pick_t = (choice >> slot) & 1
                        transpose = (pos % 2 == 0) ^ bool(pick_t)
                        w.append("b" if transpose else "B")
                    words.append(_canonical_word("".join(w)))
                groups[tuple(sorted(words))] += 1
    cache: dict[str, int] = {}
    rows = []
    total = Fraction(0)
    for pattern, mult in sorted(groups.items()):
        tp = 1
        for w in pattern:
            if w not in cache:
                cache[w] = _word_trace(w, B, Bt)
            tp *= cache[w]
        pure = all(set(w) == {"B"} or set(w) == {"b"} for w in pattern)
        if pure and len(pattern) == 1:
            structure = "4-cycle"
        elif pure:
            structure = "2-cycle product"
        else:
            structure = "mixed"
        contrib = Fraction(mult * tp, norm)
        total += contrib
        rows.append(CensusRow(pattern, structure, mult, tp, contrib))
    counts = prime_cycle_counts(g, 4)
    walks = {2: _word_trace("BB", B, Bt), 4: _word_trace("BBBB", B, Bt)}
    expect = {L: sum(d * counts[d] for d in range(1, L + 1) if L % d == 0) for L in (2, 4)}
    return FourCycleCensus(tuple(rows), total, tuple(counts), walks, walks == expect)
