"""Short-cycle counts and their tails in Erdos-Renyi graphs.

Counts use closed-walk traces of the adjacency matrix:

    triangles = Tr(A^3) / 6
    4-cycles  = (Tr(A^4) - 2 sum_v d_v^2 + 2|E|) / 8

The second identity removes the degenerate closed 4-walks (``2|E|`` walks
along one edge and ``2 sum_v d_v(d_v - 1)`` walks along two edges sharing a
vertex) from ``Tr(A^4) = 8 C_4 + 2|E| + 2 sum_v d_v(d_v - 1)``.  Both are
checked against exhaustive enumeration in the test-suite.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb, log, sqrt

import numpy as np

from . import kernels
from .ensemble import EnsembleSpec
from .errors import EnsembleError, GraphError
from .graph import UndirectedMultigraph

STATISTICS = ("triangles", "four_cycles")


def _simple_adjacency(g: UndirectedMultigraph) -> np.ndarray:
    if not g.is_simple():
        raise GraphError("cycle census needs a simple graph (parallel edges found)")
    return g.adjacency_matrix()


def count_triangles(g: UndirectedMultigraph) -> int:
    A = _simple_adjacency(g).astype(object)
    return int(np.trace(A.dot(A).dot(A))) // 6


def count_4cycles(g: UndirectedMultigraph) -> int:
    A = _simple_adjacency(g).astype(object)
    A2 = A.dot(A)
    deg = [int(x) for x in g.degrees()]
    tr4 = int(np.trace(A2.dot(A2)))
    val = tr4 - 2 * sum(d * d for d in deg) + 2 * g.num_edges
    q, r = divmod(val, 8)
    if r:
        raise ArithmeticError(f"4-cycle trace identity left remainder {r}")
    return q


def triangles_bruteforce(g: UndirectedMultigraph) -> int:
    A = _simple_adjacency(g)
    return sum(1 for a, b, c in combinations(range(g.num_vertices), 3) if A[a, b] and A[b, c] and A[a, c])


def four_cycles_bruteforce(g: UndirectedMultigraph) -> int:
    # each 4-set carries three possible cyclic orders
    A = _simple_adjacency(g)
    total = 0
    for a, b, c, d in combinations(range(g.num_vertices), 4):
        for w, x, y, z in ((a, b, c, d), (a, b, d, c), (a, c, b, d)):
            if A[w, x] and A[x, y] and A[y, z] and A[z, w]:
                total += 1
    return total


@dataclass
class CycleCensus:
    N: int
    p: float
    triangles: np.ndarray = field(repr=False)
    four_cycles: np.ndarray = field(repr=False)

    def statistic(self, name: str) -> np.ndarray:
        if name == "triangles":
            return self.triangles
        if name == "four_cycles":
            return self.four_cycles
        raise ValueError(f"unknown statistic {name!r}; expected one of {STATISTICS}")


def census(spec: EnsembleSpec, S: int | None = None) -> CycleCensus:
    """Triangle and 4-cycle counts for samples ``0..S-1`` of an Erdos-Renyi spec.

    Samples are the same graphs as :func:`zetacode.ensemble.sample_graph`.
    """
    if spec.kind != "erdos_renyi":
        raise EnsembleError("cycle census is defined for erdos_renyi ensembles")
    S = spec.samples if S is None else int(S)
    tri, quad = kernels.er_census(spec.seed, np.arange(S), spec.N, spec.p)
    return CycleCensus(spec.N, spec.p, tri, quad)


def wilson_interval(hits: int, n: int, z: float = 1.959963984540054) -> tuple[float, float]:
    if n == 0:
        return 0.0, 1.0
    phat = hits / n
    denom = 1 + z * z / n
    centre = (phat + z * z / (2 * n)) / denom
    half = z * sqrt(phat * (1 - phat) / n + z * z / (4 * n * n)) / denom
    lo = 0.0 if hits == 0 else max(0.0, centre - half)
    hi = 1.0 if hits == n else min(1.0, centre + half)
    return lo, hi


@dataclass
class RateEstimate:
    N: int
    p: float
    t: float
    statistic: str
    threshold: float
    hits: int
    samples: int
    p_hat: float
    ci_lo: float
    ci_hi: float
    phi_hat: float | None
    phi_lower: float | None
    below_resolution: bool

    def row(self) -> dict:
        return {"N": self.N, "p": self.p, "t": self.t, "P_hat": self.p_hat, "ci_lo": self.ci_lo,
                "ci_hi": self.ci_hi, "phi_hat": self.phi_hat}


def _threshold(N: int, statistic: str, t: float) -> float:
    return N ** 3 * t if statistic == "triangles" else N ** 4 * t


def tail_from_census(c: CycleCensus, statistic: str, t: float) -> RateEstimate:
    """Tail fraction ``P(X >= N^3 t)`` (triangles) or ``P(X >= N^4 t)`` (4-cycles)."""
    x = c.statistic(statistic)
    S = len(x)
    thr = _threshold(c.N, statistic, t)
    hits = int((x >= thr - 1e-9 * max(1.0, abs(thr))).sum())
    lo, hi = wilson_interval(hits, S)
    n2 = c.N ** 2
    if hits == 0:
        # below resolution 1/S: only a lower bound on the rate is supported
        return RateEstimate(c.N, c.p, t, statistic, thr, 0, S, 0.0, lo, hi, None, -log(hi) / n2, True)
    ph = hits / S
    return RateEstimate(c.N, c.p, t, statistic, thr, hits, S, ph, lo, hi, -log(ph) / n2, -log(hi) / n2, False)


def tail_probability(spec: EnsembleSpec, statistic: str, t, S: int | None = None):
    """Tail estimate at one ``t`` or, for a sequence, at each ``t`` on the same samples."""
    if statistic not in STATISTICS:
        raise ValueError(f"unknown statistic {statistic!r}; expected one of {STATISTICS}")
    S = spec.samples if S is None else int(S)
    if S < 100:
        raise EnsembleError("tail estimates need at least 100 samples")
    c = census(spec, S)
    if np.ndim(t) == 0:
        return tail_from_census(c, statistic, float(t))
    return [tail_from_census(c, statistic, float(x)) for x in t]


@dataclass
class ScalingProbe:
    p: float
    t: float
    statistic: str
    estimates: list[RateEstimate]
    spread: float | None
    flagged: list[int]

    @property
    def phi(self) -> list[tuple[int, float | None]]:
        return [(e.N, e.phi_hat) for e in self.estimates]


def rate_scaling_probe(p: float, t: float, N_list, S: int, seed: int = 0,
                       statistic: str = "triangles") -> ScalingProbe:
    """``phi_hat(N) = -log P_hat / N^2`` across ``N_list`` and the spread max/min.

    Values of ``N`` with no tail hits are flagged and excluded from the spread.
    """
    ests = []
    for N in N_list:
        spec = EnsembleSpec.erdos_renyi(N, p, seed=seed, samples=S)
        ests.append(tail_probability(spec, statistic, t, S))
    flagged = [e.N for e in ests if e.below_resolution]
    vals = [e.phi_hat for e in ests if e.phi_hat is not None]
    spread = None
    if vals and min(vals) > 0:
        spread = max(vals) / min(vals)
    return ScalingProbe(p, t, statistic, ests, spread, flagged)


def mean_density(N: int, p: float, statistic: str = "triangles") -> float:
    """``E[X] / N^3`` (triangles) or ``E[X] / N^4`` (4-cycles) at finite ``N``."""
    if statistic == "triangles":
        return comb(N, 3) * p ** 3 / N ** 3
    return 3 * comb(N, 4) * p ** 4 / N ** 4
