"""Graph and code suites shared by the tests, plus brute-force oracles."""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations, permutations, product

import networkx as nx
import numpy as np

from zetacode.graph import UndirectedMultigraph, build_graph, hashimoto_matrix


def _canonical_simple(n, edges):
    best = None
    for perm in permutations(range(n)):
        key = tuple(sorted(tuple(sorted((perm[a], perm[b]))) for a, b in edges))
        if best is None or key < best:
            best = key
    return best


def small_connected_graphs(max_vertices: int = 5, min_degree: int = 2) -> list[UndirectedMultigraph]:
    """All connected simple graphs on 3..max_vertices vertices with the given
    minimum degree, one per isomorphism class."""
    out = []
    for n in range(3, max_vertices + 1):
        pairs = list(combinations(range(n), 2))
        seen = set()
        for mask in range(1, 1 << len(pairs)):
            edges = [pairs[i] for i in range(len(pairs)) if mask >> i & 1]
            g = build_graph(n, edges)
            if g.degrees().min() < min_degree or not g.is_connected():
                continue
            key = _canonical_simple(n, edges)
            if key in seen:
                continue
            seen.add(key)
            out.append(build_graph(n, list(key)))
    return out


def random_multigraphs(count: int = 50, max_edges: int = 9, seed: int = 2024) -> list[UndirectedMultigraph]:
    """Seeded connected loopless multigraphs with cycle rank at least 1.

    Vertex counts run 4..7 and edge multiplicity is capped at 2, so that the
    number of prime cycles up to length 12 stays in the thousands.
    """
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        n = int(rng.integers(4, 8))
        E = int(rng.integers(n, max_edges + 1))
        # a random spanning tree keeps the graph connected
        edges = [(int(rng.integers(0, v)), v) for v in range(1, n)]
        while len(edges) < E:
            a, b = sorted(int(x) for x in rng.choice(n, size=2, replace=False))
            if sum(1 for e in edges if tuple(sorted(e)) == (a, b)) < 2:
                edges.append((a, b))
        out.append(build_graph(n, edges))
    return out


def bass_oracle_suite():
    return small_connected_graphs() + random_multigraphs()


# E[1/det(I - uB)] over G(4, 3/10) at u = 1/10, frozen from er_exact_expectation
ER4_EXACT = Fraction(30929470509259920417629, 30922627613341464000000)


def er_exact_expectation(N: int, p: Fraction, u: Fraction) -> Fraction:
    """Exact ``E[1/det(I - uB)]`` over G(N, p) by enumerating every graph,
    with ``det(I - uB)`` evaluated in rationals by fraction-exact elimination."""
    pairs = list(combinations(range(N), 2))
    total = Fraction(0)
    for mask in range(1 << len(pairs)):
        edges = [pairs[i] for i in range(len(pairs)) if mask >> i & 1]
        k = len(edges)
        prob = p ** k * (1 - p) ** (len(pairs) - k)
        if k == 0:
            total += prob
            continue
        B = hashimoto_matrix(build_graph(N, edges))
        total += prob / fraction_det([[Fraction(int(i == j)) - u * int(B[i, j]) for j in range(len(B))]
                                      for i in range(len(B))])
    return total


def fraction_det(rows) -> Fraction:
    a = [list(r) for r in rows]
    n = len(a)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            if f:
                for j in range(c, n):
                    a[r][j] -= f * a[c][j]
    return det


def weight2_parity(n_checks: int, n_bits: int, rng) -> np.ndarray:
    """Random column-weight-2 parity-check matrix (a cycle code)."""
    H = np.zeros((n_checks, n_bits), dtype=np.int64)
    for i in range(n_bits):
        a, b = rng.choice(n_checks, size=2, replace=False)
        H[a, i] = H[b, i] = 1
    return H


def circulant_cycle_code(n: int) -> np.ndarray:
    """``n x n`` circulant with columns ``e_i + e_{i+1}``: the cycle code of C_n."""
    H = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        H[i, i] = H[(i + 1) % n, i] = 1
    return H


def is_cycle_union(H, c) -> bool:
    """Every check meets the support of ``c`` an even number of times and the
    support is nonempty or zero (the zero word is the empty union)."""
    return not ((np.asarray(H) @ np.asarray(c)) % 2).any()


def all_words(n):
    return product((0, 1), repeat=n)



def _same_side(a, b):
    return a["side"] == b["side"]


def connected_tanner_matrices(max_edges: int = 8) -> list[np.ndarray]:
    """One parity-check matrix per connected Tanner graph with at most
    ``max_edges`` edges, up to row and column permutation.

    Graphs grow one edge at a time (closing a bit-check pair or attaching a
    new bit or check); duplicates are removed by an isomorphism test that
    keeps bits and checks apart, which is exactly row/column equivalence.
    """
    seed = nx.Graph()
    seed.add_node(0, side=0)
    seed.add_node(1, side=1)
    seed.add_edge(0, 1)
    level, classes = [seed], [seed]
    for _ in range(max_edges - 1):
        buckets, nxt = {}, []
        for G in level:
            top = max(G.nodes) + 1
            growth = [(a, b) for a in G for b in G
                      if G.nodes[a]["side"] == 0 and G.nodes[b]["side"] == 1 and not G.has_edge(a, b)]
            growth += [(a, None) for a in G]
            for a, b in growth:
                X = G.copy()
                if b is None:
                    X.add_node(top, side=1 - G.nodes[a]["side"])
                    b = top
                X.add_edge(a, b)
                key = nx.weisfeiler_lehman_graph_hash(X, node_attr="side", iterations=4)
                bucket = buckets.setdefault(key, [])
                if not any(nx.is_isomorphic(X, Y, node_match=_same_side) for Y in bucket):
                    bucket.append(X)
                    nxt.append(X)
        level = nxt
        classes += nxt
    out = []
    for G in classes:
        bits = sorted(v for v in G if G.nodes[v]["side"] == 0)
        checks = sorted(v for v in G if G.nodes[v]["side"] == 1)
        H = np.zeros((len(checks), len(bits)), dtype=np.int64)
        for a, b in G.edges:
            if G.nodes[a]["side"] == 1:
                a, b = b, a
            H[checks.index(b), bits.index(a)] = 1
        out.append(H)
    return out


# CLI invocations run from tests/data; every subcommand appears at least once
CLI_CASES = {
    "zeta_univariate": ["zeta", "--graph", "triangle.txt", "--univariate"],
    "zeta_multivariate": ["zeta", "--graph", "triangle.txt"],
    "zeta_k4_csv": ["zeta", "--graph", "k4.txt", "--univariate", "--format", "csv"],
    "pseudo": ["pseudo", "--alist", "cycle3.alist", "--degree", "7"],
    "cover": ["cover", "--dense", "circ3.txt", "--M", "2", "--seed", "1"],
    "ensemble_point": ["ensemble", "--kind", "point_mass", "--graph", "triangle.txt", "--u", "0"],
    "ensemble_grid": ["ensemble", "--kind", "erdos_renyi", "--N", "4", "--p", "0.3", "--u-grid", "0:0.2:0.1",
                      "--samples", "2000", "--seed", "3", "--format", "csv"],
    "gaussian": ["gaussian", "--dense", "m4.txt", "--u", "0.1", "--samples", "20000", "--seed", "1"],
    "gaussian_graph": ["gaussian", "--graph", "triangle.txt", "--u", "0.2", "--samples", "5000", "--seed", "2"],
    "cycles": ["cycles", "--graph", "k4.txt", "--degree", "6"],
    "ldp": ["ldp", "--N", "10,12,14", "--p", "0.3", "--t", "0.004,0.006", "--samples", "500", "--seed", "2",
            "--format", "csv"],
}


def strip_timestamp(text: str) -> str:
    """Output with the timestamp line (JSON or CSV header) removed."""
    return "\n".join(line for line in text.splitlines()
                     if '"timestamp"' not in line and not line.startswith("# timestamp="))
