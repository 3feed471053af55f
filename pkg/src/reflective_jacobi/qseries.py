"""Truncated Laurent series in ``q`` with exact rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping

from sympy import divisor_sigma


class TruncationError(ValueError):
    """A coefficient was requested outside the known window."""


class QSeries:
    """``sum_{n_min <= n < trunc} a_n q^n + O(q^trunc)``.

    Coefficients are stored densely from ``n_min``.  Arithmetic never claims
    more precision than its inputs carry: a product is known below
    ``min(trunc_1 + n_min_2, trunc_2 + n_min_1)``.
    """

    __slots__ = ("n_min", "trunc", "_c", "weight_tag")

    def __init__(self, coeffs: Mapping[int, object], n_min: int = 0, trunc: int | None = None,
                 weight_tag: int | None = None):
        if trunc is None:
            trunc = max(coeffs, default=n_min - 1) + 1
        if trunc < n_min:
            raise ValueError(f"empty window [{n_min}, {trunc})")
        self.n_min = n_min
        self.trunc = trunc
        self.weight_tag = weight_tag
        dense = [Fraction(0)] * (trunc - n_min)
        for n, a in coeffs.items():
            if not n_min <= n < trunc:
                if a:
                    raise ValueError(f"exponent {n} outside window [{n_min}, {trunc})")
                continue
            dense[n - n_min] = Fraction(a)
        self._c = dense

    @classmethod
    def constant(cls, a, trunc: int) -> QSeries:
        return cls({0: a}, 0, trunc, weight_tag=0)

    def __getitem__(self, n: int) -> Fraction:
        if n >= self.trunc:
            raise TruncationError(f"q^{n} is beyond the truncation O(q^{self.trunc})")
        if n < self.n_min:
            return Fraction(0)
        return self._c[n - self.n_min]

    def coefficients(self) -> dict[int, Fraction]:
        return {self.n_min + i: a for i, a in enumerate(self._c) if a}

    def valuation(self) -> int | None:
        for i, a in enumerate(self._c):
            if a:
                return self.n_min + i
        return None

    def truncate(self, trunc: int) -> QSeries:
        if trunc > self.trunc:
            raise TruncationError(f"cannot extend O(q^{self.trunc}) to O(q^{trunc})")
        return QSeries({n: a for n, a in self.coefficients().items() if n < trunc},
                       min(self.n_min, trunc), trunc, self.weight_tag)

    def __repr__(self):
        terms = [f"{a}*q^{n}" for n, a in self.coefficients().items()]
        return f"QSeries({' + '.join(terms) or '0'} + O(q^{self.trunc}))"

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return self.trunc == other.trunc and self.coefficients() == other.coefficients()

    def __hash__(self):
        return hash((self.trunc, tuple(sorted(self.coefficients().items()))))

    def _tag(self, other: QSeries) -> int | None:
        if self.weight_tag == other.weight_tag:
            return self.weight_tag
        return None

    def __add__(self, other):
        if not isinstance(other, QSeries):
            other = QSeries.constant(other, self.trunc)
            other.weight_tag = self.weight_tag
        trunc = min(self.trunc, other.trunc)
        n_min = min(self.n_min, other.n_min, trunc)
        c = {n: self[n] + other[n] for n in range(n_min, trunc)}
        return QSeries(c, n_min, trunc, self._tag(other))

    __radd__ = __add__

    def __neg__(self):
        return QSeries({n: -a for n, a in self.coefficients().items()}, self.n_min, self.trunc, self.weight_tag)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, QSeries):
            a = Fraction(other)
            return QSeries({n: a * c for n, c in self.coefficients().items()}, self.n_min, self.trunc,
                           self.weight_tag)
        n_min = self.n_min + other.n_min
        trunc = min(self.trunc + other.n_min, other.trunc + self.n_min)
        out: dict[int, Fraction] = {}
        mine, theirs = self.coefficients(), other.coefficients()
        for i, a in mine.items():
            for j, b in theirs.items():
                if i + j < trunc:
                    out[i + j] = out.get(i + j, Fraction(0)) + a * b
        tag = None
        if self.weight_tag is not None and other.weight_tag is not None:
            tag = self.weight_tag + other.weight_tag
        return QSeries(out, n_min, max(trunc, n_min), tag)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, QSeries):
            return self * other.inverse()
        return self * (Fraction(1) / Fraction(other))

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only non-negative integer powers")
        if k == 0:
            return QSeries.constant(1, self.trunc - self.n_min)
        result, base = None, self
        while k:
            if k & 1:
                result = base if result is None else result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def inverse(self) -> QSeries:
        """Reciprocal series; the lowest stored coefficient must be non-zero."""
        v = self.valuation()
        if v is None or v != self.n_min:
            raise ValueError("leading coefficient at n_min must be non-zero to invert")
        length = self.trunc - v
        unit = [self[v + i] for i in range(length)]
        inv = [Fraction(0)] * length
        inv[0] = 1 / unit[0]
        for i in range(1, length):
            inv[i] = -sum((unit[j] * inv[i - j] for j in range(1, i + 1)), Fraction(0)) / unit[0]
        tag = -self.weight_tag if self.weight_tag is not None else None
        return QSeries({i - v: a for i, a in enumerate(inv)}, -v, length - v, tag)


def _sigma(n: int, k: int) -> int:
    return int(divisor_sigma(n, k))


def eisenstein(kind: str, N: int) -> QSeries:
    """``G2 = -1/24 + sum sigma(n) q^n``, ``E4 = 1 + 240 ...``, ``E6 = 1 - 504 ...``."""
    if N < 1:
        raise ValueError("N must be at least 1")
    if kind == "G2":
        c = {0: Fraction(-1, 24), **{n: _sigma(n, 1) for n in range(1, N)}}
        return QSeries(c, 0, N, 2)
    if kind == "E4":
        return QSeries({0: 1, **{n: 240 * _sigma(n, 3) for n in range(1, N)}}, 0, N, 4)
    if kind == "E6":
        return QSeries({0: 1, **{n: -504 * _sigma(n, 5) for n in range(1, N)}}, 0, N, 6)
    raise ValueError(f"unknown Eisenstein series {kind!r}")


def _euler_power(exponent: int, N: int) -> list[int]:
    """Coefficients of ``prod_{n>=1} (1 - q^n)^exponent`` below ``q^N``."""
    c = [0] * N
    c[0] = 1
    for n in range(1, N):
        for _ in range(abs(exponent)):
            if exponent > 0:
                for i in range(N - 1, n - 1, -1):
                    c[i] -= c[i - n]
            else:
                for i in range(n, N):
                    c[i] += c[i - n]
    return c


def delta(N: int, inverse: bool = False) -> QSeries:
    """The discriminant ``q prod (1 - q^n)^24`` or its reciprocal, known below ``q^N``."""
    if N < 1:
        raise ValueError("N must be at least 1")
    if inverse:
        c = _euler_power(-24, N + 1)
        return QSeries({n - 1: a for n, a in enumerate(c)}, -1, N, -12)
    c = _euler_power(24, N)
    return QSeries({n + 1: a for n, a in enumerate(c) if n + 1 < N}, 0, N, 12)
