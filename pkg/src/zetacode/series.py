"""Exact truncated power series and polynomials.

:class:`TruncatedSeries` stores a multivariate series graded by total degree.
Exponent vectors are packed into one Python int, ``w`` bits per variable with
``w`` large enough to hold the truncation degree, so multiplying monomials is
integer addition and never carries between fields.
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping

from .errors import IntegralityError


def _norm(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def _div(c, d: int):
    if isinstance(c, int):
        q, r = divmod(c, d)
        return q if r == 0 else Fraction(c, d)
    return _norm(Fraction(c) / d)


class TruncatedSeries:
    """Series in ``nvars`` variables with exact coefficients, modulo total degree ``> degree``."""

    __slots__ = ("nvars", "degree", "_w", "_parts")

    def __init__(self, nvars: int, degree: int, parts=None):
        self.nvars = int(nvars)
        self.degree = int(degree)
        if self.nvars < 1 or self.degree < 0:
            raise ValueError("need nvars >= 1 and degree >= 0")
        self._w = max(1, self.degree.bit_length())
        if parts is None:
            parts = [dict() for _ in range(self.degree + 1)]
        self._parts = parts

    # -- construction ------------------------------------------------------

    def _pack(self, exp) -> int:
        key = 0
        for i, e in enumerate(exp):
            key |= int(e) << (i * self._w)
        return key

    def _unpack(self, key: int) -> tuple[int, ...]:
        mask = (1 << self._w) - 1
        return tuple((key >> (i * self._w)) & mask for i in range(self.nvars))

    @classmethod
    def from_terms(cls, nvars: int, degree: int, terms: Mapping[tuple, object]) -> "TruncatedSeries":
        s = cls(nvars, degree)
        for exp, c in terms.items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != s.nvars or min(exp) < 0:
                raise ValueError(f"bad exponent vector {exp}")
            d = sum(exp)
            if d > degree or c == 0:
                continue
            key = s._pack(exp)
            part = s._parts[d]
            v = _norm(part.get(key, 0) + c)
            if v == 0:
                part.pop(key, None)
            else:
                part[key] = v
        return s

    @classmethod
    def one(cls, nvars: int, degree: int) -> "TruncatedSeries":
        return cls.from_terms(nvars, degree, {(0,) * nvars: 1})

    @classmethod
    def monomial(cls, nvars: int, degree: int, exp, coef=1) -> "TruncatedSeries":
        return cls.from_terms(nvars, degree, {tuple(exp): coef})

    def _like(self, parts=None) -> "TruncatedSeries":
        return TruncatedSeries(self.nvars, self.degree, parts)

    def _check(self, other: "TruncatedSeries"):
        if (self.nvars, self.degree) != (other.nvars, other.degree):
            raise ValueError("series have different variable count or truncation")

    def monomial_key(self, exp) -> int:
        return self._pack(exp)

    def var_key(self, i: int) -> int:
        return 1 << (i * self._w)

    # -- inspection --------------------------------------------------------

    def homogeneous(self, d: int) -> dict[tuple[int, ...], object]:
        return {self._unpack(k): c for k, c in self._parts[d].items()}

    def terms(self) -> dict[tuple[int, ...], object]:
        out = {}
        for part in self._parts:
            for k, c in part.items():
                out[self._unpack(k)] = c
        return out

    def sorted_terms(self) -> list[tuple[tuple[int, ...], object]]:
        """Terms ordered by total degree, then lexicographically by exponent."""
        out = []
        for part in self._parts:
            out.extend(sorted((self._unpack(k), c) for k, c in part.items()))
        return out

    def coefficient(self, exp) -> object:
        d = sum(exp)
        if d > self.degree:
            raise ValueError("exponent above truncation degree")
        return self._parts[d].get(self._pack(exp), 0)

    def constant(self):
        return self._parts[0].get(0, 0)

    def __len__(self):
        return sum(len(p) for p in self._parts)

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for p in self._parts for c in p.values())

    def require_integral(self, what: str = "series") -> "TruncatedSeries":
        for d, part in enumerate(self._parts):
            for k, c in part.items():
                if not isinstance(c, int):
                    raise IntegralityError(f"{what}: coefficient {c} at exponent {self._unpack(k)} is not an integer")
        return self

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (self.nvars, self.degree) == (other.nvars, other.degree) and self._parts == other._parts

    def __repr__(self):
        body = " + ".join(f"{c}*u^{e}" for e, c in self.sorted_terms()[:8])
        more = " + ..." if len(self) > 8 else ""
        return f"TruncatedSeries(nvars={self.nvars}, degree={self.degree}: {body or '0'}{more})"

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, Rational)):
            other = TruncatedSeries.one(self.nvars, self.degree) * other
        self._check(other)
        parts = []
        for a, b in zip(self._parts, other._parts):
            c = dict(a)
            for k, v in b.items():
                s = _norm(c.get(k, 0) + v)
                if s == 0:
                    c.pop(k, None)
                else:
                    c[k] = s
            parts.append(c)
        return self._like(parts)

    __radd__ = __add__

    def __neg__(self):
        return self._like([{k: -v for k, v in p.items()} for p in self._parts])

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "TruncatedSeries":
        if c == 0:
            return self._like()
        return self._like([{k: _norm(v * c) for k, v in p.items()} for p in self._parts])

    def __mul__(self, other):
        if isinstance(other, (int, Rational)):
            return self.scale(other)
        self._check(other)
        parts = [dict() for _ in range(self.degree + 1)]
        for da, pa in enumerate(self._parts):
            if not pa:
                continue
            for db in range(self.degree - da + 1):
                pb = other._parts[db]
                if pb:
                    _mac(parts[da + db], pa, pb)
        return self._like(_prune(parts))

    __rmul__ = __mul__

    def truncate(self, degree: int) -> "TruncatedSeries":
        """Restrict to total degree ``<= degree`` (new truncation)."""
        if degree > self.degree:
            raise ValueError("cannot raise the truncation degree")
        out = TruncatedSeries(self.nvars, degree)
        out._parts = [{out._pack(self._unpack(k)): c for k, c in p.items()} for p in self._parts[: degree + 1]]
        return out

    def euler(self) -> "TruncatedSeries":
        """Degree operator ``sum_i u_i d/du_i``: scales the degree-d part by d."""
        return self._like([{k: _norm(v * d) for k, v in p.items()} for d, p in enumerate(self._parts)])

    def reciprocal(self) -> "TruncatedSeries":
        c0 = self.constant()
        if c0 == 0:
            raise ZeroDivisionError("series with zero constant term has no reciprocal")
        inv0 = _norm(Fraction(1) / Fraction(c0)) if c0 not in (1, -1) else c0
        g = [dict() for _ in range(self.degree + 1)]
        g[0][0] = inv0
        for d in range(1, self.degree + 1):
            acc: dict[int, object] = {}
            for j in range(1, d + 1):
                if self._parts[j] and g[d - j]:
                    _mac(acc, self._parts[j], g[d - j])
            g[d] = {k: _norm(-v * inv0) for k, v in acc.items() if v != 0}
        return self._like(_prune(g))

    def exp(self) -> "TruncatedSeries":
        """``exp`` of a series with zero constant term, via ``d F_d = sum_j (j L_j) F_{d-j}``."""
        if self.constant() != 0:
            raise ValueError("exp needs a zero constant term")
        theta = self.euler()._parts
        f = [dict() for _ in range(self.degree + 1)]
        f[0][0] = 1
        for d in range(1, self.degree + 1):
            acc: dict[int, object] = {}
            for j in range(1, d + 1):
                if theta[j] and f[d - j]:
                    _mac(acc, theta[j], f[d - j])
            f[d] = {k: _div(v, d) for k, v in acc.items() if v != 0}
        return self._like(f)

    def log(self) -> "TruncatedSeries":
        """``log`` of a series with constant term 1."""
        if self.constant() != 1:
            raise ValueError("log needs constant term 1")
        F = self._parts
        theta = [dict() for _ in range(self.degree + 1)]  # d * L_d
        for d in range(1, self.degree + 1):
            acc = {k: _norm(v * d) for k, v in F[d].items()}
            for j in range(1, d):
                if theta[j] and F[d - j]:
                    _mac(acc, theta[j], F[d - j], sign=-1)
            theta[d] = {k: v for k, v in acc.items() if v != 0}
        return self._like([{} if d == 0 else {k: _div(v, d) for k, v in p.items()} for d, p in enumerate(theta)])

    # -- serialisation -----------------------------------------------------

    def to_json(self) -> dict:
        terms = []
        for exp, c in self.sorted_terms():
            terms.append({"exp": list(exp), "coef": str(c)})
        return {"vars": self.nvars, "truncation": self.degree, "terms": terms}

    @classmethod
    def from_json(cls, obj: Mapping) -> "TruncatedSeries":
        terms = {tuple(t["exp"]): _norm(Fraction(t["coef"])) for t in obj["terms"]}
        return cls.from_terms(obj["vars"], obj["truncation"], terms)


def _mac(acc: dict, a: dict, b: dict, sign: int = 1) -> None:
    """acc += sign * a * b over packed monomials."""
    get = acc.get
    if len(a) < len(b):
        a, b = b, a
    for kb, vb in b.items():
        vb = vb * sign
        for ka, va in a.items():
            k = ka + kb
            acc[k] = get(k, 0) + va * vb


def _prune(parts):
    return [{k: _norm(v) for k, v in p.items() if v != 0} for p in parts]


# ---------------------------------------------------------------------------
# univariate polynomials
# ---------------------------------------------------------------------------

class UnivariatePolynomial:
    """Exact polynomial, coefficients by ascending degree, trailing zeros trimmed."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        c = [_norm(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __eq__(self, other):
        if isinstance(other, UnivariatePolynomial):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"UnivariatePolynomial({list(self.coeffs)})"

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return UnivariatePolynomial((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n))

    def __neg__(self):
        return UnivariatePolynomial(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, UnivariatePolynomial):
            return UnivariatePolynomial(c * other for c in self.coeffs)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UnivariatePolynomial()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return UnivariatePolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = UnivariatePolynomial([1])
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def divmod(self, other: "UnivariatePolynomial"):
        if not other.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        r = [Fraction(c) for c in self.coeffs]
        d = other.coeffs
        lead = Fraction(d[-1])
        q = [Fraction(0)] * max(0, len(r) - len(d) + 1)
        for i in range(len(q) - 1, -1, -1):
            c = r[i + len(d) - 1] / lead
            q[i] = c
            if c:
                for j, y in enumerate(d):
                    r[i + j] -= c * y
        return UnivariatePolynomial(q), UnivariatePolynomial(r[: len(d) - 1])

    def exact_div(self, other: "UnivariatePolynomial") -> "UnivariatePolynomial":
        q, r = self.divmod(other)
        if r.coeffs:
            raise IntegralityError(f"{self} is not divisible by {other}")
        return q

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def to_series(self, degree: int) -> TruncatedSeries:
        return TruncatedSeries.from_terms(1, degree, {(i,): c for i, c in enumerate(self.coeffs) if i <= degree})

    @classmethod
    def from_series(cls, s: TruncatedSeries) -> "UnivariatePolynomial":
        if s.nvars != 1:
            raise ValueError("series is not univariate")
        c = [0] * (s.degree + 1)
        for (e,), v in s.terms().items():
            c[e] = v
        return cls(c)

    @classmethod
    def interpolate(cls, xs, ys) -> "UnivariatePolynomial":
        """Exact Newton interpolation through ``(xs[i], ys[i])``."""
        xs = [Fraction(x) for x in xs]
        coef = [Fraction(y) for y in ys]
        n = len(xs)
        for j in range(1, n):
            for i in range(n - 1, j - 1, -1):
                coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
        poly = UnivariatePolynomial([coef[-1]])
        for i in range(n - 2, -1, -1):
            poly = poly * UnivariatePolynomial([-xs[i], 1]) + UnivariatePolynomial([coef[i]])
        return poly
