"""Multigraphs, Hashimoto matrices, Tanner graphs and M-cover lifts.

Directed-edge convention: for an undirected edge ``k = (a, b)`` of a graph
with ``E`` edges, directed edge ``k`` runs ``a -> b`` and directed edge
``E + k`` runs ``b -> a``.  Both orientations share the edge variable.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import CodeError, GraphError


@dataclass(frozen=True)
class UndirectedMultigraph:
    """Finite undirected graph; parallel edges allowed, self-loops rejected."""

    num_vertices: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.num_vertices < 0:
            raise GraphError("negative vertex count")
        clean = []
        for k, e in enumerate(self.edges):
            if len(e) != 2:
                raise GraphError(f"edge {k} is not a vertex pair: {e!r}")
            a, b = int(e[0]), int(e[1])
            if not (0 <= a < self.num_vertices and 0 <= b < self.num_vertices):
                raise GraphError(f"edge {k} = ({a}, {b}) has a vertex outside [0, {self.num_vertices})")
            if a == b:
                raise GraphError(f"edge {k} is a self-loop at vertex {a}")
            clean.append((a, b))
        object.__setattr__(self, "edges", tuple(clean))

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @property
    def cycle_rank(self) -> int:
        """``|E| - |V| + c`` with ``c`` the number of connected components."""
        return self.num_edges - self.num_vertices + len(self.components())

    def degrees(self) -> np.ndarray:
        deg = np.zeros(self.num_vertices, dtype=np.int64)
        for a, b in self.edges:
            deg[a] += 1
            deg[b] += 1
        return deg

    def adjacency_matrix(self) -> np.ndarray:
        """Vertex adjacency with edge multiplicities."""
        A = np.zeros((self.num_vertices, self.num_vertices), dtype=np.int64)
        for a, b in self.edges:
            A[a, b] += 1
            A[b, a] += 1
        return A

    def is_simple(self) -> bool:
        seen = set()
        for a, b in self.edges:
            key = (min(a, b), max(a, b))
            if key in seen:
                return False
            seen.add(key)
        return True

    def components(self) -> list[list[int]]:
        parent = list(range(self.num_vertices))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b in self.edges:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb
        groups: dict[int, list[int]] = {}
        for v in range(self.num_vertices):
            groups.setdefault(find(v), []).append(v)
        return sorted(groups.values())

    def is_connected(self) -> bool:
        return self.num_vertices > 0 and len(self.components()) == 1

    # -- directed edges ----------------------------------------------------

    def tail(self, e: int) -> int:
        E = self.num_edges
        return self.edges[e][0] if e < E else self.edges[e - E][1]

    def head(self, e: int) -> int:
        E = self.num_edges
        return self.edges[e][1] if e < E else self.edges[e - E][0]

    def inv(self, e: int) -> int:
        E = self.num_edges
        return e + E if e < E else e - E

    def directed_edges(self) -> tuple[np.ndarray, np.ndarray]:
        """``(tails, heads)`` arrays of length ``2|E|``."""
        if not self.edges:
            empty = np.zeros(0, dtype=np.int64)
            return empty, empty
        ed = np.asarray(self.edges, dtype=np.int64)
        tails = np.concatenate([ed[:, 0], ed[:, 1]])
        heads = np.concatenate([ed[:, 1], ed[:, 0]])
        return tails, heads


def build_graph(num_vertices: int, edges: Sequence[Sequence[int]]) -> UndirectedMultigraph:
    """Graph with edge ids in input order."""
    return UndirectedMultigraph(int(num_vertices), tuple(tuple(e) for e in edges))


def cycle_graph(n: int) -> UndirectedMultigraph:
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> UndirectedMultigraph:
    return build_graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def hashimoto_matrix(g: UndirectedMultigraph) -> np.ndarray:
    """Non-backtracking edge adjacency matrix of size ``2|E| x 2|E|``.

    ``B[i, j] = 1`` iff ``head(e_i) == tail(e_j)`` and ``e_j`` is not the
    reversal of ``e_i``.  Parallel edges are distinct, so stepping from one
    copy onto another is allowed.
    """
    if g.num_edges == 0:
        raise GraphError("Hashimoto matrix needs at least one edge")
    tails, heads = g.directed_edges()
    E = g.num_edges
    B = (heads[:, None] == tails[None, :]).astype(np.int64)
    idx = np.arange(2 * E)
    B[idx, (idx + E) % (2 * E)] = 0
    return B


def successor_lists(B: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """CSR (indptr, indices) of the nonzero pattern, ascending column order."""
    rows, cols = np.nonzero(B)
    ptr = np.zeros(B.shape[0] + 1, dtype=np.int64)
    np.add.at(ptr, rows + 1, 1)
    return np.cumsum(ptr), cols.astype(np.int64)


def _nilpotent_pattern(a: np.ndarray) -> bool:
    # a nonnegative matrix is nilpotent iff the digraph of its support is acyclic
    support = a != 0
    indeg = support.sum(axis=0)
    alive = np.ones(a.shape[0], dtype=bool)
    frontier = list(np.flatnonzero(indeg == 0))
    while frontier:
        v = frontier.pop()
        alive[v] = False
        for w in np.flatnonzero(support[v]):
            indeg[w] -= 1
            if indeg[w] == 0:
                frontier.append(w)
    return not alive.any()


def spectral_radius(m, tol: float = 1e-10, max_iter: int = 100_000) -> float:
    """Largest eigenvalue modulus by power iteration.

    Nonnegative matrices are iterated as ``m + I``, whose Perron root strictly
    dominates every other eigenvalue in modulus, so periodic (e.g. bipartite)
    spectra still converge.  The iteration starts from the all-ones vector and
    re-seeds once with a fixed non-symmetric vector on stagnation; if both runs
    fail to settle, the dense eigenvalue solver decides.
    """
    a = np.asarray(m, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise GraphError(f"spectral radius needs a square matrix, got shape {a.shape}")
    n = a.shape[0]
    if n == 0 or not a.any():
        return 0.0
    nonneg = bool((a >= 0).all())
    if nonneg and _nilpotent_pattern(a):
        return 0.0
    shift = 1.0 if nonneg else 0.0
    op = a + shift * np.eye(n)
    starts = (np.ones(n), 1.0 + 0.5 * np.sin(np.arange(1, n + 1)))
    for x in starts:
        x = x / np.linalg.norm(x)
        prev = None
        for _ in range(max_iter):
            y = op @ x
            lam = float(np.linalg.norm(y))
            if lam == 0.0:
                break
            x = y / lam
            if prev is not None and abs(lam - prev) <= tol * max(1.0, lam):
                return max(lam - shift, 0.0)
            prev = lam
    return float(np.max(np.abs(np.linalg.eigvals(a))))


# ---------------------------------------------------------------------------
# parity-check matrices and Tanner graphs
# ---------------------------------------------------------------------------

def as_parity_matrix(H) -> np.ndarray:
    """Validate a binary matrix (rows = checks, columns = bits)."""
    a = np.asarray(H)
    if a.ndim != 2:
        raise CodeError(f"parity-check matrix must be 2-D, got shape {a.shape}")
    if not np.isin(a, (0, 1)).all():
        raise CodeError("parity-check matrix entries must be 0 or 1")
    return a.astype(np.int64)


@dataclass(frozen=True)
class TannerGraph:
    """Bipartite graph of ``H``: vertices ``0..n-1`` are bits, ``n..n+m-1`` checks.

    Edges are listed in row-major order of the ones of ``H`` and oriented
    bit -> check.
    """

    H: np.ndarray = field(repr=False)
    graph: UndirectedMultigraph

    @property
    def num_bits(self) -> int:
        return self.H.shape[1]

    @property
    def num_checks(self) -> int:
        return self.H.shape[0]

    def is_bit(self, v: int) -> bool:
        return v < self.num_bits

    def to_parity(self) -> np.ndarray:
        n = self.num_bits
        H = np.zeros_like(self.H)
        for b, c in self.graph.edges:
            H[c - n, b] = 1
        return H


def tanner_from_parity(H) -> TannerGraph:
    H = as_parity_matrix(H)
    if not H.any():
        raise CodeError("parity-check matrix is all zero")
    m, n = H.shape
    rows, cols = np.nonzero(H)
    edges = tuple((int(i), int(n + j)) for j, i in zip(rows, cols))
    return TannerGraph(H=H, graph=UndirectedMultigraph(n + m, edges))


def is_cycle_code(H, strict: bool = False) -> bool:
    """Every bit in exactly two checks; ``strict`` also demands row weight 2."""
    H = as_parity_matrix(H)
    if H.shape[1] == 0:
        return False
    ok = bool((H.sum(axis=0) == 2).all())
    if strict:
        ok = ok and bool((H.sum(axis=1) == 2).all())
    return ok


def collapse_normal_graph(T) -> tuple[UndirectedMultigraph, tuple[int, ...]]:
    """Collapse the Tanner graph of a cycle code onto its checks.

    Check ``j`` becomes vertex ``j`` and bit ``i`` becomes edge ``i`` joining
    its two checks, so the returned bit -> edge map is the identity.
    Accepts a :class:`TannerGraph` or a parity-check matrix.
    """
    H = T.H if isinstance(T, TannerGraph) else as_parity_matrix(T)
    weights = H.sum(axis=0)
    bad = np.flatnonzero(weights != 2)
    if len(bad):
        i = int(bad[0])
        raise CodeError(f"bit {i} has degree {int(weights[i])}, collapse needs degree 2 for every bit")
    edges = []
    for i in range(H.shape[1]):
        a, b = np.flatnonzero(H[:, i])
        edges.append((int(a), int(b)))
    return UndirectedMultigraph(H.shape[0], tuple(edges)), tuple(range(H.shape[1]))


# ---------------------------------------------------------------------------
# M-covers
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CoverGraph:
    """M-fold cover; lifted vertex ``(v, k)`` has index ``v*M + k`` and the
    lift of base edge ``e`` at sheet ``k`` has index ``e*M + k``."""

    base: UndirectedMultigraph
    M: int
    perms: tuple[tuple[int, ...], ...]
    graph: UndirectedMultigraph

    def vertex(self, v: int, k: int) -> int:
        return v * self.M + k

    def project_vertex(self, x: int) -> int:
        return x // self.M

    def project_edge(self, f: int) -> int:
        return f // self.M


def m_cover(g: UndirectedMultigraph, M: int, perms) -> CoverGraph:
    """Lift ``g``; edge ``(a, b)`` with permutation ``pi`` becomes the edges
    ``((a, k), (b, pi(k)))`` for every sheet ``k``."""
    M = int(M)
    if M < 1:
        raise GraphError("cover degree M must be at least 1")
    perms = tuple(tuple(int(x) for x in p) for p in perms)
    if len(perms) != g.num_edges:
        raise GraphError(f"need one permutation per edge: got {len(perms)} for {g.num_edges} edges")
    for e, p in enumerate(perms):
        if sorted(p) != list(range(M)):
            raise GraphError(f"permutation for edge {e} is not a permutation of 0..{M - 1}: {p}")
    lifted = []
    for (a, b), p in zip(g.edges, perms):
        for k in range(M):
            lifted.append((a * M + k, b * M + p[k]))
    return CoverGraph(g, M, perms, UndirectedMultigraph(g.num_vertices * M, tuple(lifted)))


def random_cover(g: UndirectedMultigraph, M: int, seed: int) -> CoverGraph:
    rng = np.random.default_rng(seed)
    return m_cover(g, M, [tuple(rng.permutation(M)) for _ in range(g.num_edges)])


def lifted_parity_check(T: TannerGraph, cover: CoverGraph) -> np.ndarray:
    """Parity-check matrix of the lifted code: row ``(j, k) -> j*M + k``,
    column ``(i, k) -> i*M + k``."""
    if cover.base != T.graph:
        raise CodeError("cover is not a lift of this Tanner graph")
    n, M = T.num_bits, cover.M
    Ht = np.zeros((T.num_checks * M, n * M), dtype=np.int64)
    for x, y in cover.graph.edges:
        # bits occupy the first n*M lifted vertices
        bit, chk = (x, y) if x < n * M else (y, x)
        Ht[chk - n * M, bit] = 1
    return Ht
