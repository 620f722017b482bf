"""Random graph ensembles and the ensemble-averaged zeta function.

The averaged quantity is ``E[det(I - u B(X))^{-1}]`` over sampled graphs
``X``.  A sample whose Hashimoto spectral radius ``rho`` has
``|u| >= 1/rho - 1e-9`` lies outside its own convergence disc; it is excluded
and counted rather than averaged.
"""
from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from functools import lru_cache

import numpy as np

from . import kernels
from .errors import EnsembleError
from .graph import UndirectedMultigraph, build_graph, hashimoto_matrix, spectral_radius

RADIUS_MARGIN = 1e-9
KINDS = ("point_mass", "erdos_renyi", "bipartite_config")


@dataclass(frozen=True)
class EnsembleSpec:
    kind: str
    seed: int = 0
    samples: int = 1000
    graph: UndirectedMultigraph | None = None
    N: int | None = None
    p: float | None = None
    num_bits: int | None = None
    num_checks: int | None = None
    bit_degree: int | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise EnsembleError(f"unknown ensemble kind {self.kind!r}; expected one of {KINDS}")
        if self.samples < 1:
            raise EnsembleError("sample count must be at least 1")
        if self.kind == "point_mass" and self.graph is None:
            raise EnsembleError("point_mass ensemble needs a graph")
        if self.kind == "erdos_renyi":
            if self.N is None or self.N < 1:
                raise EnsembleError("erdos_renyi needs N >= 1")
            if self.p is None or not (0.0 < self.p <= 1.0):
                raise EnsembleError("erdos_renyi needs 0 < p <= 1")
        if self.kind == "bipartite_config":
            nb, nc, d = self.num_bits, self.num_checks, self.bit_degree
            if not nb or not nc or not d or min(nb, nc, d) < 1:
                raise EnsembleError("bipartite_config needs num_bits, num_checks, bit_degree >= 1")
            if (nb * d) % nc:
                raise EnsembleError(f"num_bits*bit_degree = {nb * d} is not divisible by num_checks = {nc}")

    @classmethod
    def point_mass(cls, graph, seed=0, samples=1):
        return cls("point_mass", seed=seed, samples=samples, graph=graph)

    @classmethod
    def erdos_renyi(cls, N, p, seed=0, samples=1000):
        return cls("erdos_renyi", seed=seed, samples=samples, N=int(N), p=float(p))

    @classmethod
    def bipartite_config(cls, num_bits, num_checks, bit_degree, seed=0, samples=1000):
        return cls("bipartite_config", seed=seed, samples=samples,
                   num_bits=num_bits, num_checks=num_checks, bit_degree=bit_degree)

    def to_json(self) -> dict:
        params = {}
        if self.kind == "point_mass":
            params = {"num_vertices": self.graph.num_vertices, "edges": [list(e) for e in self.graph.edges]}
        elif self.kind == "erdos_renyi":
            params = {"N": self.N, "p": self.p}
        else:
            params = {"num_bits": self.num_bits, "num_checks": self.num_checks, "bit_degree": self.bit_degree}
        return {"kind": self.kind, "params": params, "seed": self.seed, "samples": self.samples}

    @classmethod
    def from_json(cls, obj) -> "EnsembleSpec":
        if isinstance(obj, str):
            obj = json.loads(obj)
        params = dict(obj.get("params", {}))
        kind = obj["kind"]
        extra = {"seed": int(obj.get("seed", 0)), "samples": int(obj.get("samples", 1000))}
        if kind == "point_mass":
            g = build_graph(params["num_vertices"], params["edges"])
            return cls(kind, graph=g, **extra)
        return cls(kind, **params, **extra)


def sample_graph(spec: EnsembleSpec, index: int) -> UndirectedMultigraph:
    """Sample ``index`` of the ensemble; a pure function of ``(spec.seed, index)``."""
    if spec.kind == "point_mass":
        return spec.graph
    if spec.kind == "erdos_renyi":
        N = spec.N
        iu, ju = np.triu_indices(N, 1)
        keep = kernels.uniforms(spec.seed, index, len(iu)) < spec.p
        return build_graph(N, list(zip(iu[keep].tolist(), ju[keep].tolist())))
    nb, nc, d = spec.num_bits, spec.num_checks, spec.bit_degree
    half = nb * d
    check_slots = np.repeat(np.arange(nc), half // nc)
    order = np.argsort(kernels.uniforms(spec.seed, index, half), kind="stable")
    bits = np.repeat(np.arange(nb), d)
    return build_graph(nb + nc, list(zip(bits.tolist(), (nb + check_slots[order]).tolist())))


@dataclass
class ZetaEstimate:
    u: float
    mean: float
    stderr: float
    included: int
    excluded: int
    radius_min: float
    radius_median: float
    max_condition: float

    def to_json(self) -> dict:
        d = asdict(self)
        for k, v in d.items():
            if isinstance(v, float) and not np.isfinite(v):
                d[k] = None
        return d


def _inverse_det(g: UndirectedMultigraph, u: float) -> tuple[float, float, float]:
    """``(radius, 1/det(I - uB), cond_1)`` for one graph; NaN value if excluded."""
    if g.num_edges == 0:
        return np.inf, 1.0, 1.0
    B = hashimoto_matrix(g).astype(float)
    rho = spectral_radius(B)
    radius = np.inf if rho == 0 else 1.0 / rho
    if abs(u) >= radius - RADIUS_MARGIN:
        return radius, np.nan, np.nan
    A = np.eye(B.shape[0]) - u * B
    sign, logdet = np.linalg.slogdet(A)
    return radius, float(sign * np.exp(-logdet)), float(np.linalg.cond(A, 1))


def evaluate_samples(spec: EnsembleSpec, u: float, S: int | None = None, threads: int = 1):
    """Per-sample ``(radius, inverse determinant, condition)`` arrays, index order."""
    S = spec.samples if S is None else int(S)
    if S < 1:
        raise EnsembleError("sample count must be at least 1")

    @lru_cache(maxsize=4096)
    def by_edges(edges, nv):
        return _inverse_det(UndirectedMultigraph(nv, edges), u)

    def work(lo, hi):
        rows = []
        for i in range(lo, hi):
            g = sample_graph(spec, i)
            rows.append(by_edges(g.edges, g.num_vertices))
        return rows

    chunk = max(1, -(-S // max(1, threads * 4)))
    bounds = [(lo, min(S, lo + chunk)) for lo in range(0, S, chunk)]
    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            parts = list(pool.map(lambda b: work(*b), bounds))
    else:
        parts = [work(*b) for b in bounds]
    rows = [r for part in parts for r in part]
    radius, value, cond = (np.array(col, dtype=float) for col in zip(*rows))
    return radius, value, cond


def averaged_zeta(spec: EnsembleSpec, u: float, S: int | None = None, threads: int = 1) -> ZetaEstimate:
    """Monte Carlo estimate of the ensemble-averaged ``det(I - uB)^{-1}``."""
    radius, value, cond = evaluate_samples(spec, u, S, threads)
    ok = ~np.isnan(value)
    radius_min = float(radius.min())
    radius_median = float(np.median(radius))
    if not ok.any():
        raise EnsembleError(
            f"all {len(value)} samples excluded at u = {u}: ensemble radius {radius_min}",
            stats={"radius_min": radius_min, "radius_median": radius_median},
        )
    vals = value[ok]
    n = len(vals)
    stderr = float(vals.std(ddof=1) / np.sqrt(n)) if n > 1 else 0.0
    return ZetaEstimate(
        u=float(u),
        mean=float(vals.mean()),
        stderr=stderr,
        included=int(n),
        excluded=int((~ok).sum()),
        radius_min=radius_min,
        radius_median=radius_median,
        max_condition=float(cond[ok].max()),
    )
