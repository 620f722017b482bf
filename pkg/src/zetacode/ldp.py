"""Large-deviation rate functions.

``legendre_rate`` evaluates ``I(x) = max_{t >= 0} [t x - log m(t)]`` by
golden-section search; the objective is concave in ``t`` because log-MGFs
are convex.  ``gartner_ellis_lambda`` estimates ``Lambda(t) = lim n^{-1}
log m_n(t)`` from a finite sequence of ``n``.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import log, sqrt
from typing import Callable, Sequence

import numpy as np
from scipy.special import logsumexp

_INVPHI = (sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class LegendreRate:
    x: float
    rate: float
    t_star: float
    at_boundary: bool

    def to_json(self) -> dict:
        return {"x": self.x, "I": self.rate, "t_star": self.t_star, "at_boundary": self.at_boundary}


def legendre_rate(log_mgf: Callable[[float], float], x: float, t_max: float, tol: float = 1e-9) -> LegendreRate:
    """Legendre transform ``sup_t [t x - log_mgf(t)]`` over ``t`` in ``[-t_max, t_max]``.

    The objective is concave, so a golden-section search to width ``tol``
    finds the maximiser.  ``at_boundary`` is set when it sits at an end of the
    range, meaning the range was too small and ``rate`` is only a lower bound.
    """
    if t_max <= 0:
        raise ValueError("t_max must be positive")

    def f(t):
        return t * x - log_mgf(t)

    a, b = -float(t_max), float(t_max)
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = f(d)
    t_star = 0.5 * (a + b)
    best_t, best = t_star, f(t_star)
    for edge in (0.0, -float(t_max), float(t_max)):
        # every log-MGF vanishes at t = 0; score it exactly rather than by rounding
        v = 0.0 if edge == 0.0 else f(edge)
        if v > best:
            best_t, best = edge, v
    at_boundary = abs(best_t) >= t_max - 2 * tol
    return LegendreRate(float(x), float(best), float(best_t), bool(at_boundary))


@dataclass(frozen=True)
class GartnerEllis:
    t: float
    limit: float
    per_n: tuple[tuple[int, float], ...]
    diagnostic: float
    diverging: bool


def gartner_ellis_lambda(log_mgf_sequence: Callable[[int, float], float], t: float,
                         n_list: Sequence[int]) -> GartnerEllis:
    """Scaled log-MGFs ``n^{-1} log m_n(t)`` and a Richardson limit estimate.

    Assuming ``n^{-1} log m_n(t) = Lambda(t) + c/n + o(1/n)``, consecutive
    pairs are combined as ``(n2 L2 - n1 L1) / (n2 - n1)``.  ``diagnostic`` is
    the gap between the last two extrapolants; ``diverging`` is set when the
    raw values move further apart as ``n`` grows.
    """
    ns = [int(n) for n in n_list]
    if len(ns) < 3:
        raise ValueError("need at least three values of n")
    if any(b <= a for a, b in zip(ns, ns[1:])):
        raise ValueError("n_list must be strictly increasing")
    vals = [log_mgf_sequence(n, t) / n for n in ns]
    rich = [(n2 * v2 - n1 * v1) / (n2 - n1) for n1, n2, v1, v2 in zip(ns, ns[1:], vals, vals[1:])]
    steps = [abs(b - a) for a, b in zip(vals, vals[1:])]
    scale = max(1.0, max(abs(v) for v in vals))
    diverging = any(s2 > s1 + 1e-12 * scale for s1, s2 in zip(steps, steps[1:]))
    return GartnerEllis(float(t), float(rich[-1]), tuple(zip(ns, map(float, vals))),
                        float(abs(rich[-1] - rich[-2])), bool(diverging))


def empirical_log_mgf(samples) -> Callable[[float], float]:
    """``t -> log mean(exp(t X))`` over the given samples, computed stably."""
    x = np.asarray(samples, dtype=float)
    if x.size == 0:
        raise ValueError("no samples")
    logn = log(x.size)
    return lambda t: float(logsumexp(t * x) - logn)


def bernoulli_log_mgf(q: float) -> Callable[[float], float]:
    return lambda t: float(np.logaddexp(log(1 - q), log(q) + t))


def bernoulli_kl(x: float, q: float) -> float:
    def term(a, b):
        return 0.0 if a == 0 else a * log(a / b)
    return term(x, q) + term(1 - x, 1 - q)
