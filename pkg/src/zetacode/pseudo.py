"""Codewords and pseudo-codewords of binary codes, in particular cycle codes."""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import numpy as np

from . import kernels
from .errors import CodeError
from .graph import (
    CoverGraph,
    TannerGraph,
    as_parity_matrix,
    collapse_normal_graph,
    is_cycle_code,
    lifted_parity_check,
)
from .zeta import edge_zeta_inverse_det

MAX_BRUTEFORCE_BITS = 24


def codewords_bruteforce(H) -> list[tuple[int, ...]]:
    """Every ``c`` in ``{0,1}^n`` with ``Hc = 0 (mod 2)``, sorted lexicographically.

    Exhaustive over ``2^n`` words, so ``n`` is capped at 24.
    """
    H = as_parity_matrix(H)
    n = H.shape[1]
    if n > MAX_BRUTEFORCE_BITS:
        raise CodeError(
            f"{n} bits is too many for 2^n enumeration (limit {MAX_BRUTEFORCE_BITS}); "
            "use pseudocodewords_from_zeta for cycle codes"
        )
    masks = kernels.codeword_masks(H)
    words = [tuple((int(x) >> i) & 1 for i in range(n)) for x in masks]
    words.sort()
    return words


def is_codeword(H, c) -> bool:
    H = as_parity_matrix(H)
    c = np.asarray(c, dtype=np.int64)
    if c.shape != (H.shape[1],):
        raise CodeError(f"word has length {c.size}, code has {H.shape[1]} bits")
    return not ((H @ c) % 2).any()


def pseudo_from_cover(T: TannerGraph, cover: CoverGraph, c_tilde: Sequence[int]) -> tuple[Fraction, ...]:
    """Fiber average ``omega_i = (1/M) sum_k c~_(i,k)`` of a lifted codeword.

    ``c_tilde`` is indexed like the lifted bits, ``(i, k) -> i*M + k``.
    """
    Ht = lifted_parity_check(T, cover)
    c = np.asarray(c_tilde, dtype=np.int64)
    if c.shape != (Ht.shape[1],) or not np.isin(c, (0, 1)).all():
        raise CodeError(f"lifted word must be a 0/1 vector of length {Ht.shape[1]}")
    if ((Ht @ c) % 2).any():
        raise CodeError("word violates the lifted parity checks")
    M = cover.M
    sums = c.reshape(T.num_bits, M).sum(axis=1)
    return tuple(Fraction(int(s), M) for s in sums)


def mod2_projection(omega: Sequence, M: int, H) -> tuple[tuple[int, ...], bool]:
    """Reduce the integer fiber sums ``M * omega`` mod 2 and test ``Hc = 0``."""
    sums = []
    for w in omega:
        s = Fraction(w) * M
        if s.denominator != 1:
            raise CodeError(f"M * omega = {s} is not an integer")
        sums.append(int(s))
    c = tuple(s % 2 for s in sums)
    return c, is_codeword(H, c)


def pseudocodewords_from_zeta(H, D: int | None = None) -> dict[tuple[int, ...], int]:
    """Exponent vectors of the nonzero monomials of the edge zeta function.

    The Tanner graph is collapsed to its normal graph (checks as vertices,
    bit ``i`` as edge ``i`` carrying variable ``u_i``), and the reciprocal of
    ``det(I - U B)`` is expanded to total degree ``D`` (default ``2n``).
    Returns ``{exponent vector: coefficient}``, zero vector included.

    The extraction reads the zeta function, not its inverse: every coefficient
    of the zeta expansion is a positive count of prime-cycle multisets, while
    in the inverse distinct terms can cancel.
    """
    H = as_parity_matrix(H)
    if not is_cycle_code(H):
        raise CodeError("pseudo-codeword extraction needs a cycle code (every column of weight 2)")
    n = H.shape[1]
    D = 2 * n if D is None else int(D)
    if D < 0:
        raise CodeError("truncation degree must be nonnegative")
    g, bit_to_edge = collapse_normal_graph(H)
    varmap = [0] * n
    for bit, e in enumerate(bit_to_edge):
        varmap[e] = bit
    zeta = edge_zeta_inverse_det(g, varmap, D).reciprocal()
    return dict(zeta.sorted_terms())


def exponent_mod2_is_codeword(p: Sequence[int], H) -> bool:
    return is_codeword(H, [int(x) % 2 for x in p])


def cover_pseudocodewords(T: TannerGraph, cover: CoverGraph) -> list[tuple[tuple[Fraction, ...], tuple[int, ...], bool]]:
    """All ``(omega, omega mod 2, is_codeword)`` over the lifted code of ``cover``.

    Rows follow the lexicographic order of the lifted codewords, as in
    :func:`codewords_bruteforce`.
    """
    Ht = lifted_parity_check(T, cover)
    n, M = T.num_bits, cover.M
    if n * M > MAX_BRUTEFORCE_BITS:
        raise CodeError(f"lifted code has {n * M} bits, over the enumeration limit {MAX_BRUTEFORCE_BITS}")
    masks = kernels.codeword_masks(Ht)
    words = (masks[:, None] >> np.arange(n * M)) & 1
    words = words[np.lexsort(words.T[::-1])]
    sums = words.reshape(len(words), n, M).sum(axis=2)
    proj = sums % 2
    ok = ~((proj @ T.H.T) % 2).any(axis=1)
    frac = [Fraction(k, M) for k in range(M + 1)]
    out = []
    for s, c, good in zip(sums.tolist(), proj.tolist(), ok.tolist()):
        out.append((tuple(map(frac.__getitem__, s)), tuple(c), good))
    return out
