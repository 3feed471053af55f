"""Truncated Fourier expansions of Jacobi forms of lattice index.

An expansion stores ``f(n, l)`` for ``-pole_order <= n < trunc`` and every
``l`` in the dual of the index lattice; within that window the stored
support is complete.  Coefficients are keyed by ``(n, y)`` with ``y = G l``
the pairing vector of ``l`` (see :mod:`reflective_jacobi.lattice`).
"""

from __future__ import annotations

import enum
from collections import defaultdict
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Iterator, Mapping

import numpy as np

from .lattice import DualVector, IntegerLattice, direct_sum, vectors_up_to
from .qseries import QSeries, TruncationError, eisenstein

Pairing = tuple  # tuple[int, ...]
Key = tuple  # (n, Pairing)


class HolomorphyClass(enum.Enum):
    WEAKLY_HOLOMORPHIC = "weakly_holomorphic"
    WEAK = "weak"
    HOLOMORPHIC = "holomorphic"


class JacobiExpansion:
    """``sum f(n, l) q^n zeta^l`` known for ``-pole_order <= n < trunc``."""

    __slots__ = ("index", "weight", "trunc", "pole_order", "_coeffs", "_norms")

    def __init__(self, index: IntegerLattice, weight, coeffs: Mapping[Key, object], trunc: int,
                 pole_order: int = 0):
        if pole_order < 0:
            raise ValueError("pole_order must be non-negative")
        self.index = index
        self.weight = Fraction(weight)
        self.trunc = trunc
        self.pole_order = pole_order
        clean: dict[Key, Fraction] = {}
        r = index.rank
        for (n, y), c in coeffs.items():
            if not c:
                continue
            if len(y) != r:
                raise ValueError(f"pairing vector {y} has wrong length for rank {r}")
            if not -pole_order <= n < trunc:
                raise ValueError(f"q^{n} lies outside the window [{-pole_order}, {trunc})")
            clean[(n, tuple(y))] = c if isinstance(c, Fraction) else Fraction(c)
        self._coeffs = clean
        self._norms: dict[Pairing, Fraction] | None = None

    # -- access ------------------------------------------------------------

    @property
    def rank(self) -> int:
        return self.index.rank

    def __len__(self):
        return len(self._coeffs)

    def items(self) -> Iterator[tuple[Key, Fraction]]:
        return iter(self._coeffs.items())

    def keys(self):
        return self._coeffs.keys()

    def _check_window(self, n: int) -> None:
        if n >= self.trunc:
            raise TruncationError(f"q^{n} is beyond the truncation O(q^{self.trunc})")

    def __getitem__(self, key: Key) -> Fraction:
        n, y = key
        self._check_window(n)
        return self._coeffs.get((n, tuple(y)), Fraction(0))

    def coefficient(self, n: int, l) -> Fraction:
        """``f(n, l)`` for ``l`` a :class:`DualVector` or coordinate tuple."""
        coords = l.coords if isinstance(l, DualVector) else l
        return self[(n, self.index.pairing_vector(coords))]

    def layer(self, n: int) -> dict[Pairing, Fraction]:
        self._check_window(n)
        return {y: c for (m, y), c in self._coeffs.items() if m == n}

    def layers(self) -> dict[int, dict[Pairing, Fraction]]:
        out: dict[int, dict[Pairing, Fraction]] = defaultdict(dict)
        for (n, y), c in self._coeffs.items():
            out[n][y] = c
        return dict(out)

    def constant_term(self) -> Fraction:
        return self[(0, (0,) * self.rank)]

    def norm_of(self, y: Pairing) -> Fraction:
        return self._norm_table()[y] if y in self._norm_table() else self.index.norm_from_pairing(y)

    def _norm_table(self) -> dict[Pairing, Fraction]:
        if self._norms is None:
            ys = list({y for _, y in self._coeffs})
            self._norms = dict(zip(ys, self.index.norms_from_pairings(ys)))
        return self._norms

    def hyperbolic_norm(self, n: int, y: Pairing) -> Fraction:
        return 2 * n - self.norm_of(y)

    def vector(self, y: Pairing) -> DualVector:
        return DualVector(self.index.coords_from_pairing(y), self.norm_of(y))

    def sorted_terms(self) -> list[tuple[int, Pairing, Fraction]]:
        """Terms ordered by ``(n, coordinates of l)``."""
        A, _ = self.index._inverse_scaled

        def coord_key(y):
            return tuple(int(v) for v in (np.asarray(y, dtype=object) @ A)) if self.rank else ()

        return sorted(((n, y, c) for (n, y), c in self._coeffs.items()), key=lambda t: (t[0], coord_key(t[1])))

    # -- arithmetic ---------------------------------------------------------

    def _compatible(self, other: JacobiExpansion) -> None:
        if self.index.gram != other.index.gram:
            raise ValueError("expansions have different index lattices")
        if self.weight != other.weight:
            raise ValueError(f"cannot add weights {self.weight} and {other.weight}")

    def __add__(self, other: JacobiExpansion) -> JacobiExpansion:
        self._compatible(other)
        trunc = min(self.trunc, other.trunc)
        out: dict[Key, Fraction] = {}
        for src in (self, other):
            for (n, y), c in src._coeffs.items():
                if n < trunc:
                    out[(n, y)] = out.get((n, y), Fraction(0)) + c
        return JacobiExpansion(self.index, self.weight, out, trunc, max(self.pole_order, other.pole_order))

    def __neg__(self) -> JacobiExpansion:
        return self.scale(-1)

    def __sub__(self, other: JacobiExpansion) -> JacobiExpansion:
        return self + (-other)

    def scale(self, a) -> JacobiExpansion:
        a = Fraction(a)
        return JacobiExpansion(self.index, self.weight, {k: a * c for k, c in self._coeffs.items()},
                               self.trunc, self.pole_order)

    def __mul__(self, other):
        if isinstance(other, QSeries):
            return mul_scalar(self, other)
        if isinstance(other, JacobiExpansion):
            return jacobi_product(self, other)
        return self.scale(other)

    __rmul__ = __mul__

    def __truediv__(self, a):
        return self.scale(Fraction(1) / Fraction(a))

    def truncate(self, trunc: int) -> JacobiExpansion:
        if trunc > self.trunc:
            raise TruncationError(f"cannot extend O(q^{self.trunc}) to O(q^{trunc})")
        return JacobiExpansion(self.index, self.weight,
                               {k: c for k, c in self._coeffs.items() if k[0] < trunc},
                               trunc, self.pole_order)

    def with_coefficient(self, n: int, y: Pairing, value) -> JacobiExpansion:
        """Copy with one coefficient replaced (for building counterexamples)."""
        coeffs = dict(self._coeffs)
        coeffs[(n, tuple(y))] = Fraction(value)
        return JacobiExpansion(self.index, self.weight, coeffs, self.trunc,
                               max(self.pole_order, -n))

    def __eq__(self, other):
        if not isinstance(other, JacobiExpansion):
            return NotImplemented
        return (self.index.gram == other.index.gram and self.weight == other.weight
                and self.trunc == other.trunc and self._coeffs == other._coeffs)

    __hash__ = None

    def __repr__(self):
        return (f"JacobiExpansion(index={self.index!r}, weight={self.weight}, terms={len(self)}, "
                f"window=[{-self.pole_order}, {self.trunc}))")


# ---------------------------------------------------------------------------
# constructors and products


def theta_series(L: IntegerLattice, N: int) -> JacobiExpansion:
    """``sum_{v in L} q^{(v,v)/2} zeta^v`` below ``q^N``; weight ``rank/2``."""
    if N < 1:
        raise ValueError("N must be at least 1")
    vecs = vectors_up_to(L, 2 * (N - 1))
    if L.rank == 0:
        return JacobiExpansion(L, 0, {(0, ()): 1}, N, 0)
    # lattice vectors have integer coordinates, so the pairing is an integer matmul
    X = np.array([[int(x) for x in coords] for coords, _ in vecs], dtype=object)
    Y = X @ np.array(L.gram, dtype=object)
    coeffs = {(int(norm / 2), tuple(int(v) for v in y)): Fraction(1) for (_, norm), y in zip(vecs, Y)}
    return JacobiExpansion(L, Fraction(L.rank, 2), coeffs, N, 0)


def constant_one(N: int) -> JacobiExpansion:
    """The constant 1 as a Jacobi form of weight 0 for the rank-0 lattice."""
    return JacobiExpansion(IntegerLattice(()), 0, {(0, ()): 1}, N, 0)


def mul_scalar(phi: JacobiExpansion, f: QSeries) -> JacobiExpansion:
    """Multiply by a scalar modular form; weights add, the index is unchanged."""
    if f.weight_tag is None:
        raise ValueError("scalar factor carries no weight tag")
    trunc = min(phi.trunc + f.n_min, f.trunc - phi.pole_order)
    if trunc < 1:
        raise TruncationError(f"product would only be known below q^{trunc}")
    low = -phi.pole_order + f.n_min
    fc = sorted(f.coefficients().items())
    out: dict[Key, Fraction] = {}
    for (n, y), c in phi.items():
        for j, a in fc:
            m = n + j
            if m >= trunc:
                break
            k = (m, y)
            out[k] = out.get(k, Fraction(0)) + a * c
    return JacobiExpansion(phi.index, phi.weight + f.weight_tag, out, trunc, max(0, -low))


def tensor(phi1: JacobiExpansion, phi2: JacobiExpansion) -> JacobiExpansion:
    """Product over the orthogonal sum of the two index lattices."""
    trunc = min(phi1.trunc - phi2.pole_order, phi2.trunc - phi1.pole_order)
    if trunc < 1:
        raise TruncationError(f"tensor product would only be known below q^{trunc}")
    index = direct_sum(phi1.index, phi2.index)
    layers2 = sorted(phi2.layers().items())
    out: dict[Key, Fraction] = {}
    for (n1, y1), c1 in phi1.items():
        for n2, layer in layers2:
            m = n1 + n2
            if m >= trunc:
                break
            # one key can arise from several splits n = n1 + n2
            for y2, c2 in layer.items():
                k = (m, y1 + y2)
                out[k] = out.get(k, Fraction(0)) + c1 * c2
    return JacobiExpansion(index, phi1.weight + phi2.weight, out, trunc,
                           phi1.pole_order + phi2.pole_order)


def jacobi_product(phi1: JacobiExpansion, phi2: JacobiExpansion) -> JacobiExpansion:
    """Product in the same elliptic variable; the index Gram matrices add."""
    if phi1.rank != phi2.rank:
        raise ValueError("same-variable product needs equal ranks")
    gram = tuple(tuple(a + b for a, b in zip(r1, r2)) for r1, r2 in zip(phi1.index.gram, phi2.index.gram))
    index = IntegerLattice(gram)
    trunc = min(phi1.trunc - phi2.pole_order, phi2.trunc - phi1.pole_order)
    if trunc < 1:
        raise TruncationError(f"product would only be known below q^{trunc}")
    layers2 = sorted(phi2.layers().items())
    out: dict[Key, Fraction] = {}
    for (n1, y1), c1 in phi1.items():
        for n2, layer in layers2:
            m = n1 + n2
            if m >= trunc:
                break
            for y2, c2 in layer.items():
                k = (m, tuple(a + b for a, b in zip(y1, y2)))
                out[k] = out.get(k, Fraction(0)) + c1 * c2
    return JacobiExpansion(index, phi1.weight + phi2.weight, out, trunc,
                           phi1.pole_order + phi2.pole_order)


# ---------------------------------------------------------------------------
# differential operators and the q^0 identity


def heat_H(phi: JacobiExpansion) -> JacobiExpansion:
    """Multiply ``f(n, l)`` by ``(2n - (l, l)) / 2``; the weight tag rises by 2."""
    out = {(n, y): (2 * n - phi.norm_of(y)) * c / 2 for (n, y), c in phi.items()}
    return JacobiExpansion(phi.index, phi.weight + 2, out, phi.trunc, phi.pole_order)


def heat_Hk(phi: JacobiExpansion, k) -> JacobiExpansion:
    """Weight-raising operator ``H(phi) + (2k - rank) G2 phi``."""
    if Fraction(k) != phi.weight:
        raise ValueError(f"heat_Hk called with k={k} on a form of weight {phi.weight}")
    g2 = eisenstein("G2", phi.trunc + phi.pole_order)
    correction = mul_scalar(phi, g2).scale(2 * Fraction(k) - phi.rank)
    return heat_H(phi) + correction


def gritsenko_residual(phi: JacobiExpansion) -> Fraction:
    """``sum c(0,l) - 12/rank sum c(0,l)(l,l) - 24 a`` for a weight-0 expansion.

    ``a`` is the total ``q^{-1}`` coefficient; for the inputs considered here
    that layer is the single term ``a q^{-1}``.
    """
    if phi.weight != 0:
        raise ValueError(f"the q^0 identity needs weight 0, got {phi.weight}")
    if phi.pole_order > 1:
        raise ValueError("the q^0 identity needs pole order at most 1")
    if phi.rank == 0:
        raise ValueError("the q^0 identity needs a lattice of positive rank")
    layer0 = phi.layer(0)
    a = sum(phi.layer(-1).values(), Fraction(0)) if phi.pole_order else Fraction(0)
    s0 = sum(layer0.values(), Fraction(0))
    s1 = sum((c * phi.norm_of(y) for y, c in layer0.items()), Fraction(0))
    return s0 - Fraction(12, phi.rank) * s1 - 24 * a


def singular_part(phi: JacobiExpansion) -> list[tuple[int, DualVector, Fraction]]:
    """Stored terms with ``2n - (l, l) < 0``, ordered by ``(n, l)``."""
    return [(n, phi.vector(y), c) for n, y, c in phi.sorted_terms() if phi.hyperbolic_norm(n, y) < 0]


def classify(phi: JacobiExpansion) -> HolomorphyClass:
    """Most specific class compatible with the stored window."""
    if any(n < 0 for n, _ in phi.keys()):
        return HolomorphyClass.WEAKLY_HOLOMORPHIC
    if any(phi.hyperbolic_norm(n, y) < 0 for n, y in phi.keys()):
        return HolomorphyClass.WEAK
    return HolomorphyClass.HOLOMORPHIC


# ---------------------------------------------------------------------------
# structural checks


def elliptic_defects(phi: JacobiExpansion, translations: Iterable[tuple[int, ...]] | None = None,
                     limit: int = 10) -> list[tuple[Key, Key]]:
    """Pairs of in-window coefficients violating ``f(n,l) = f(n+(l,x)+(x,x)/2, l+x)``.

    Translations default to the basis vectors of the index and their negatives.
    """
    L = phi.index
    if translations is None:
        translations = []
        for i in range(L.rank):
            e = tuple(int(i == j) for j in range(L.rank))
            translations += [e, tuple(-v for v in e)]
    moves = []
    for x in translations:
        gx = tuple(sum(L.gram[i][j] * x[j] for j in range(L.rank)) for i in range(L.rank))
        xx = sum(x[i] * gx[i] for i in range(L.rank))
        moves.append((x, gx, xx // 2))
    bad = []
    for (n, y), c in phi.items():
        for x, gx, half in moves:
            m = n + sum(a * b for a, b in zip(y, x)) + half
            if not -phi.pole_order <= m < phi.trunc:
                continue
            target = (m, tuple(a + b for a, b in zip(y, gx)))
            if phi._coeffs.get(target, 0) != c:
                bad.append(((n, y), target))
                if len(bad) >= limit:
                    return bad
    return bad


def parity_defects(phi: JacobiExpansion, limit: int = 10) -> list[Key]:
    """Keys where ``f(n, l) != (-1)^k f(n, -l)`` for integral weight ``k``."""
    if phi.weight.denominator != 1:
        sign = 1
    else:
        sign = -1 if int(phi.weight) % 2 else 1
    bad = []
    for (n, y), c in phi.items():
        if phi._coeffs.get((n, tuple(-v for v in y)), 0) != sign * c:
            bad.append((n, y))
            if len(bad) >= limit:
                break
    return bad


# ---------------------------------------------------------------------------
# text serialisation


def _fmt(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def dumps(phi: JacobiExpansion) -> str:
    """One ``n<TAB>coords<TAB>num/den`` line per term, sorted by ``(n, coords)``.

    Header lines start with ``#`` and record the window and index.
    """
    gram = ";".join(",".join(str(v) for v in row) for row in phi.index.gram)
    lines = [
        f"# weight {_fmt(phi.weight)}",
        f"# window {-phi.pole_order} {phi.trunc}",
        f"# gram {gram}",
    ]
    for n, y, c in phi.sorted_terms():
        coords = ",".join(_fmt(v) for v in phi.index.coords_from_pairing(y))
        lines.append(f"{n}\t{coords}\t{_fmt(c)}")
    return "\n".join(lines) + "\n"


def loads(text: str, index: IntegerLattice | None = None) -> JacobiExpansion:
    weight, low, trunc, gram = Fraction(0), 0, None, None
    body = []
    for line in text.splitlines():
        if not line.strip():
            continue
        if line.startswith("#"):
            parts = line[1:].split()
            if parts[0] == "weight":
                weight = Fraction(parts[1])
            elif parts[0] == "window":
                low, trunc = int(parts[1]), int(parts[2])
            elif parts[0] == "gram":
                rows = parts[1].split(";") if len(parts) > 1 else []
                gram = tuple(tuple(int(v) for v in row.split(",")) for row in rows if row)
            continue
        n, coords, c = line.split("\t")
        body.append((int(n), [Fraction(v) for v in coords.split(",")] if coords else [], Fraction(c)))
    if index is None:
        if gram is None:
            raise ValueError("no index lattice given and no '# gram' header present")
        index = IntegerLattice(gram)
    if trunc is None:
        trunc = max((n for n, _, _ in body), default=-1) + 1
    coeffs = {(n, index.pairing_vector(coords)): c for n, coords, c in body}
    return JacobiExpansion(index, weight, coeffs, trunc, -low)


def write_dump(phi: JacobiExpansion, path: str | Path) -> None:
    Path(path).write_text(dumps(phi), encoding="utf-8")
