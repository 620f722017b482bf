"""Hot numeric kernels.

Every public kernel has a numba implementation (``_*_nb``) and a pure-numpy
one (``_*_np``); the active backend is chosen in :mod:`zetacode._accel`.
Both paths return bit-identical results, which the test-suite checks.

Random numbers come from a counter-based splitmix64 stream keyed on
``(seed, sample index, position)``, so any sample can be regenerated in
isolation and results never depend on evaluation order or thread count.
"""
from __future__ import annotations

import numpy as np

from . import _accel
from ._accel import njit, prange

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)
_STREAM = np.uint64(0xD1B54A32D192ED03)
_MASK64 = (1 << 64) - 1
_INV53 = 1.0 / 9007199254740992.0


def _seed64(seed: int) -> np.uint64:
    return np.uint64(int(seed) & _MASK64)


# ---------------------------------------------------------------------------
# counter-based uniforms
# ---------------------------------------------------------------------------

@njit
def _mix_nb(z):
    z = (z ^ (z >> np.uint64(30))) * _M1
    z = (z ^ (z >> np.uint64(27))) * _M2
    return z ^ (z >> np.uint64(31))


@njit
def _stream_base_nb(seed, index):
    return _mix_nb(_mix_nb(seed) ^ (np.uint64(index) * _STREAM + _GOLDEN))


@njit
def _uniforms_nb(seed, index, n):
    out = np.empty(n, np.float64)
    base = _stream_base_nb(seed, index)
    for k in range(n):
        z = _mix_nb(base + np.uint64(k + 1) * _GOLDEN)
        out[k] = np.float64(z >> np.uint64(11)) * _INV53
    return out


def _mix_np(z: np.ndarray) -> np.ndarray:
    z = (z ^ (z >> np.uint64(30))) * _M1
    z = (z ^ (z >> np.uint64(27))) * _M2
    return z ^ (z >> np.uint64(31))


def _uniforms_batch_np(seed: np.uint64, indices: np.ndarray, n: int) -> np.ndarray:
    with np.errstate(over="ignore"):
        s = _mix_np(np.array([seed], dtype=np.uint64))
        idx = np.asarray(indices, dtype=np.uint64)
        base = _mix_np(s ^ (idx * _STREAM + _GOLDEN))
        k = (np.arange(1, n + 1, dtype=np.uint64) * _GOLDEN)[None, :]
        z = _mix_np(base[:, None] + k)
    return (z >> np.uint64(11)).astype(np.float64) * _INV53


def uniforms(seed: int, index: int, n: int) -> np.ndarray:
    """``n`` uniforms in [0, 1) for sample ``index`` of stream ``seed``."""
    if _accel.get_backend() == "numba":
        return _uniforms_nb(_seed64(seed), int(index), int(n))
    return _uniforms_batch_np(_seed64(seed), np.array([index]), int(n))[0]


# ---------------------------------------------------------------------------
# Erdos-Renyi triangle / 4-cycle census
# ---------------------------------------------------------------------------

@njit(parallel=True)
def _er_census_nb(seed, indices, N, p):
    S = indices.shape[0]
    npairs = N * (N - 1) // 2
    tri = np.zeros(S, np.int64)
    quad = np.zeros(S, np.int64)
    for s in prange(S):
        u = _uniforms_nb(seed, indices[s], npairs)
        adj = np.zeros((N, N), np.uint8)
        k = 0
        for i in range(N):
            for j in range(i + 1, N):
                if u[k] < p:
                    adj[i, j] = 1
                    adj[j, i] = 1
                k += 1
        t = 0
        q = 0
        for i in range(N):
            for j in range(i + 1, N):
                c = 0
                for w in range(N):
                    c += adj[i, w] & adj[j, w]
                q += c * (c - 1) // 2
                if adj[i, j]:
                    t += c
        tri[s] = t // 3
        quad[s] = q // 2
    return tri, quad


def _er_census_np(seed, indices, N, p, chunk=512):
    iu, ju = np.triu_indices(N, 1)
    S = len(indices)
    tri = np.empty(S, np.int64)
    quad = np.empty(S, np.int64)
    for lo in range(0, S, chunk):
        idx = indices[lo:lo + chunk]
        edges = _uniforms_batch_np(seed, idx, len(iu)) < p
        A = np.zeros((len(idx), N, N))
        A[:, iu, ju] = edges
        A += A.transpose(0, 2, 1)
        A2 = A @ A
        tr3 = np.einsum("bij,bji->b", A2, A)
        tr4 = np.einsum("bij,bji->b", A2, A2)
        deg = A.sum(axis=2)
        m = edges.sum(axis=1)
        tri[lo:lo + chunk] = np.rint(tr3 / 6.0).astype(np.int64)
        quad[lo:lo + chunk] = np.rint((tr4 - 2.0 * (deg ** 2).sum(axis=1) + 2.0 * m) / 8.0).astype(np.int64)
    return tri, quad


def er_census(seed: int, indices, N: int, p: float) -> tuple[np.ndarray, np.ndarray]:
    """Triangle and 4-cycle counts of G(N, p) samples drawn from ``(seed, index)`` streams."""
    indices = np.ascontiguousarray(indices, dtype=np.int64)
    if _accel.get_backend() == "numba":
        return _er_census_nb(_seed64(seed), indices, int(N), float(p))
    return _er_census_np(_seed64(seed), indices, int(N), float(p))


# ---------------------------------------------------------------------------
# prime (Lyndon) non-backtracking cycles
# ---------------------------------------------------------------------------

def _prime_walks_py(succ_ptr, succ, closes, max_len, store):
    # Depth-first search over non-backtracking walks whose first edge is the
    # smallest, pruned to prenecklaces (Fredricksen-Kessler-Maiorana), so
    # each recorded word is the unique Lyndon representative of its class.
    n = succ_ptr.shape[0] - 1
    counts = np.zeros(max_len + 1, np.int64)
    cap = 1024
    buf = np.empty(cap, np.int64)
    nbuf = 0
    lcap = 256
    lens = np.empty(lcap, np.int64)
    nlens = 0
    path = np.empty(max_len + 1, np.int64)
    period = np.empty(max_len + 2, np.int64)
    cursor = np.empty(max_len + 1, np.int64)
    for s in range(n):
        path[0] = s
        depth = 1
        period[1] = 1
        if closes[s, s]:
            counts[1] += 1
        cursor[0] = succ_ptr[s] if max_len > 1 else succ_ptr[s + 1]
        while depth > 0:
            last = path[depth - 1]
            if cursor[depth - 1] >= succ_ptr[last + 1]:
                depth -= 1
                continue
            c = succ[cursor[depth - 1]]
            cursor[depth - 1] += 1
            if c < s:
                continue
            ref = path[depth - period[depth]]
            if c < ref:
                continue
            newp = period[depth] if c == ref else depth + 1
            path[depth] = c
            depth += 1
            period[depth] = newp
            if newp == depth and closes[c, s]:
                counts[depth] += 1
                if store:
                    if nbuf + depth > cap:
                        while nbuf + depth > cap:
                            cap *= 2
                        nb = np.empty(cap, np.int64)
                        nb[:nbuf] = buf[:nbuf]
                        buf = nb
                    if nlens == lcap:
                        lcap *= 2
                        nl = np.empty(lcap, np.int64)
                        nl[:nlens] = lens[:nlens]
                        lens = nl
                    for k in range(depth):
                        buf[nbuf + k] = path[k]
                    nbuf += depth
                    lens[nlens] = depth
                    nlens += 1
            cursor[depth - 1] = succ_ptr[c] if depth < max_len else succ_ptr[c + 1]
    return counts, buf[:nbuf], lens[:nlens]


_prime_walks_nb = njit(_prime_walks_py)


def prime_walks(succ_ptr, succ, closes, max_len: int, store: bool = True):
    """Enumerate Lyndon-canonical closed non-backtracking walks up to ``max_len``.

    ``succ_ptr``/``succ`` is the CSR successor structure of the Hashimoto
    matrix with ascending column indices and ``closes`` its dense boolean form.
    Returns ``(counts_by_length, flat_edges, lengths)``.

    The walk search has no vectorised form; the numpy backend runs the same
    routine interpreted.
    """
    args = (
        np.ascontiguousarray(succ_ptr, dtype=np.int64),
        np.ascontiguousarray(succ, dtype=np.int64),
        np.ascontiguousarray(closes, dtype=np.bool_),
        int(max_len),
        bool(store),
    )
    if _accel.get_backend() == "numba":
        return _prime_walks_nb(*args)
    return _prime_walks_py(*args)


# ---------------------------------------------------------------------------
# brute-force GF(2) kernel enumeration
# ---------------------------------------------------------------------------

@njit
def _codewords_mitm_nb(syn_col, n):
    # meet in the middle on single-word syndromes, as in the numpy fallback
    n1 = n // 2
    lo = np.zeros(np.int64(1) << n1, np.uint64)
    for j in range(n1):
        half = np.int64(1) << j
        for x in range(half):
            lo[half + x] = lo[x] ^ syn_col[j]
    n2 = n - n1
    hi = np.zeros(np.int64(1) << n2, np.uint64)
    for j in range(n2):
        half = np.int64(1) << j
        for x in range(half):
            hi[half + x] = hi[x] ^ syn_col[n1 + j]
    order = np.argsort(lo, kind="mergesort")
    sorted_lo = lo[order]
    left = np.searchsorted(sorted_lo, hi, side="left")
    right = np.searchsorted(sorted_lo, hi, side="right")
    total = 0
    for h in range(hi.size):
        total += right[h] - left[h]
    out = np.empty(total, np.int64)
    k = 0
    for h in range(hi.size):
        for i in range(left[h], right[h]):
            out[k] = np.int64(order[i]) | (np.int64(h) << n1)
            k += 1
    return np.sort(out)


@njit
def _codewords_nb(cols):
    n, W = cols.shape
    if W == 1:
        return _codewords_mitm_nb(cols[:, 0].copy(), n)
    total = np.int64(1) << np.int64(n)
    syn = np.zeros(W, np.uint64)
    cap = 64
    out = np.empty(cap, np.int64)
    out[0] = 0
    count = 1
    code = np.int64(0)
    for k in range(1, total):
        bit = 0
        v = k
        while (v & 1) == 0:
            v >>= 1
            bit += 1
        code ^= np.int64(1) << np.int64(bit)
        zero = True
        for w in range(W):
            syn[w] ^= cols[bit, w]
            if syn[w] != 0:
                zero = False
        if zero:
            if count == cap:
                cap *= 2
                nb = np.empty(cap, np.int64)
                nb[:count] = out[:count]
                out = nb
            out[count] = code
            count += 1
    return np.sort(out[:count])


def _half_syndromes(cols: np.ndarray) -> np.ndarray:
    syn = np.zeros((1, cols.shape[1]), dtype=np.uint64)
    for j in range(cols.shape[0]):
        syn = np.concatenate([syn, syn ^ cols[j]])
    return syn


def _codewords_np(cols: np.ndarray) -> np.ndarray:
    # Meet in the middle: x = lo | hi << n1 lies in the kernel iff the two
    # half-syndromes coincide.
    n = cols.shape[0]
    n1 = n // 2
    lo = _half_syndromes(cols[:n1])
    hi = _half_syndromes(cols[n1:])
    _, labels = np.unique(np.concatenate([lo, hi]), axis=0, return_inverse=True)
    labels = labels.reshape(-1)
    lab_lo, lab_hi = labels[: len(lo)], labels[len(lo):]
    order = np.argsort(lab_lo, kind="stable")
    sorted_lo = lab_lo[order]
    left = np.searchsorted(sorted_lo, lab_hi, side="left")
    right = np.searchsorted(sorted_lo, lab_hi, side="right")
    reps = right - left
    hi_idx = np.repeat(np.arange(len(hi), dtype=np.int64), reps)
    starts = np.repeat(left, reps)
    offs = np.arange(reps.sum()) - np.repeat(np.cumsum(reps) - reps, reps)
    lo_idx = order[starts + offs].astype(np.int64)
    return np.sort(lo_idx | (hi_idx << n1))


def pack_columns(H: np.ndarray) -> np.ndarray:
    """Column syndromes of a binary matrix packed into uint64 words, shape (n, W)."""
    H = np.asarray(H, dtype=np.uint8) & 1
    m, n = H.shape
    W = max(1, (m + 63) // 64)
    cols = np.zeros((n, W), dtype=np.uint64)
    for r in range(m):
        w, b = divmod(r, 64)
        cols[:, w] |= H[r].astype(np.uint64) << np.uint64(b)
    return cols


def codeword_masks(H: np.ndarray) -> np.ndarray:
    """All x in {0,1}^n with Hx = 0 (mod 2), as sorted bitmasks (bit i = x_i)."""
    cols = pack_columns(H)
    if cols.shape[0] == 0:
        return np.zeros(1, dtype=np.int64)
    if _accel.get_backend() == "numba":
        return _codewords_nb(cols)
    return _codewords_np(cols)
