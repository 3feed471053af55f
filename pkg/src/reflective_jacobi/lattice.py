"""Exact arithmetic on even positive-definite lattices.

A lattice is a Gram matrix ``G`` with respect to a fixed basis.  Vectors of
``L (x) Q`` are rational coordinate tuples in that basis.  A dual vector
``l`` is also addressed by its *pairing vector* ``y = G l``: ``y`` is
integral exactly when ``l`` lies in the dual lattice, and ``(l, x) = y . x``
for every ``x`` in ``L``.  Jacobi expansions key their coefficients by it.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache, reduce
from itertools import product
from typing import Iterable, Sequence

import numpy as np
import sympy
from sympy.matrices.normalforms import smith_normal_decomp

Coords = tuple  # tuple of Fraction


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (sympy.Rational, sympy.Integer)):
        return Fraction(int(x.p), int(x.q))
    return Fraction(x)


def _ldl(gram: Sequence[Sequence[int]]) -> tuple[list[list[Fraction]], list[Fraction]]:
    """Return ``(lower, pivots)`` with ``G = lower * diag(pivots) * lower^T``.

    ``lower`` is unit lower triangular.  Raises ``ValueError`` on a
    non-positive pivot.
    """
    n = len(gram)
    lower = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    piv: list[Fraction] = []
    for j in range(n):
        dj = Fraction(gram[j][j]) - sum(lower[j][k] ** 2 * piv[k] for k in range(j))
        if dj <= 0:
            raise ValueError("Gram matrix is not positive definite")
        piv.append(dj)
        for i in range(j + 1, n):
            s = Fraction(gram[i][j]) - sum(lower[i][k] * lower[j][k] * piv[k] for k in range(j))
            lower[i][j] = s / dj
    return lower, piv


def _components(gram: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    """Index sets of the orthogonal blocks of a Gram matrix."""
    n = len(gram)
    seen = [False] * n
    blocks = []
    for start in range(n):
        if seen[start]:
            continue
        stack, block = [start], []
        seen[start] = True
        while stack:
            i = stack.pop()
            block.append(i)
            for j in range(n):
                if not seen[j] and gram[i][j] != 0:
                    seen[j] = True
                    stack.append(j)
        blocks.append(tuple(sorted(block)))
    return tuple(blocks)


@dataclass(frozen=True)
class IntegerLattice:
    """An even positive-definite lattice given by its Gram matrix."""

    gram: tuple
    label: str | None = field(default=None, compare=False)

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in row) for row in self.gram)
        n = len(rows)
        if any(len(row) != n for row in rows):
            raise ValueError("Gram matrix must be square")
        for i in range(n):
            if rows[i][i] % 2:
                raise ValueError(f"lattice is not even (diagonal entry {rows[i][i]})")
            for j in range(i):
                if rows[i][j] != rows[j][i]:
                    raise ValueError("Gram matrix must be symmetric")
        object.__setattr__(self, "gram", rows)
        _ = self._ldl

    def __repr__(self):
        name = self.label or f"gram={list(map(list, self.gram))}"
        return f"IntegerLattice({name}, rank={self.rank})"

    @property
    def rank(self) -> int:
        return len(self.gram)

    @cached_property
    def _ldl(self):
        return _ldl(self.gram)

    @cached_property
    def det(self) -> int:
        d = reduce(lambda a, b: a * b, self._ldl[1], Fraction(1))
        assert d.denominator == 1
        return int(d)

    @cached_property
    def inverse(self) -> tuple[tuple[Fraction, ...], ...]:
        if self.rank == 0:
            return ()
        inv = sympy.Matrix(self.gram).inv()
        return tuple(tuple(_frac(inv[i, j]) for j in range(self.rank)) for i in range(self.rank))

    @cached_property
    def _inverse_scaled(self) -> tuple[np.ndarray, int]:
        # G^{-1} = A / den with A integral
        den = math.lcm(*(x.denominator for row in self.inverse for x in row)) if self.rank else 1
        A = np.array([[int(x * den) for x in row] for row in self.inverse], dtype=object)
        return A.reshape(self.rank, self.rank), den

    @cached_property
    def level(self) -> int:
        """Smallest ``N`` with ``N (x, x)`` in 2Z for every ``x`` in the dual."""
        level = 1
        for i, row in enumerate(self.inverse):
            level = math.lcm(level, (row[i] / 2).denominator)
            for j in range(i + 1, self.rank):
                level = math.lcm(level, row[j].denominator)
        return level

    @cached_property
    def blocks(self) -> tuple[tuple[int, ...], ...]:
        return _components(self.gram)

    def is_unimodular(self) -> bool:
        return self.det == 1

    def norm(self, coords: Sequence) -> Fraction:
        c = [_frac(x) for x in coords]
        g = self.gram
        return sum((c[i] * g[i][j] * c[j] for i in range(self.rank) for j in range(self.rank)), Fraction(0))

    def pair(self, a: Sequence, b: Sequence) -> Fraction:
        g = self.gram
        return sum(
            (_frac(a[i]) * g[i][j] * _frac(b[j]) for i in range(self.rank) for j in range(self.rank)),
            Fraction(0),
        )

    def pairing_vector(self, coords: Sequence) -> tuple[int, ...]:
        """``G @ coords``; raises ``ValueError`` if not integral."""
        c = [_frac(x) for x in coords]
        y = [sum((self.gram[i][j] * c[j] for j in range(self.rank)), Fraction(0)) for i in range(self.rank)]
        if any(v.denominator != 1 for v in y):
            raise ValueError(f"{tuple(map(str, c))} is not in the dual lattice")
        return tuple(int(v) for v in y)

    def coords_from_pairing(self, y: Sequence[int]) -> Coords:
        if self.rank == 0:
            return ()
        A, den = self._inverse_scaled
        return tuple(Fraction(int(x), den) for x in A @ np.asarray(y, dtype=object))

    def residues_from_pairings(self, ys: Sequence[Sequence[int]]) -> tuple[np.ndarray, int]:
        """``(R, den)`` with row ``R[i] / den`` the coordinates of ``ys[i]`` reduced mod 1."""
        A, den = self._inverse_scaled
        if not len(ys) or self.rank == 0:
            return np.zeros((len(ys), self.rank), dtype=np.int64), den
        Y = np.array(ys, dtype=np.int64)
        amax = max(abs(int(x)) for x in A.flat)
        if amax * int(np.abs(Y).max()) * self.rank < 2**62:
            return (Y @ A.astype(np.int64)) % den, den
        return (Y.astype(object) @ A) % den, den

    def norm_from_pairing(self, y: Sequence[int]) -> Fraction:
        A, den = self._inverse_scaled
        v = np.asarray(y, dtype=object)
        return Fraction(int(v @ A @ v), den)

    def norms_from_pairings(self, ys: Sequence[Sequence[int]]) -> list[Fraction]:
        """Vectorised :meth:`norm_from_pairing`."""
        if not ys:
            return []
        A, den = self._inverse_scaled
        if self.rank == 0:
            return [Fraction(0)] * len(ys)
        Y = np.array(ys, dtype=np.int64)
        amax = max(abs(int(x)) for x in A.flat)
        ymax = int(np.abs(Y).max())
        if amax * ymax * ymax * self.rank * self.rank < 2**62:
            nums = np.einsum("ij,jk,ik->i", Y, A.astype(np.int64), Y)
            return [Fraction(int(x), den) for x in nums]
        Yo = Y.astype(object)
        nums = ((Yo @ A) * Yo).sum(axis=1)
        return [Fraction(int(x), den) for x in nums]

    def dual_vector(self, coords: Sequence) -> DualVector:
        c = tuple(_frac(x) for x in coords)
        if len(c) != self.rank:
            raise ValueError(f"expected {self.rank} coordinates, got {len(c)}")
        self.pairing_vector(c)
        return DualVector(c, self.norm(c))

    def scaled(self, m: int) -> IntegerLattice:
        if m <= 0:
            raise ValueError("scale factor must be positive")
        label = f"{self.label}({m})" if self.label and m != 1 else self.label
        return IntegerLattice(tuple(tuple(m * x for x in row) for row in self.gram), label)

    @cached_property
    def discriminant_generators(self) -> tuple[tuple[Coords, int], ...]:
        """Generators of ``L^v / L`` with their orders (Smith normal form)."""
        if self.rank == 0:
            return ()
        D, _, V = smith_normal_decomp(sympy.Matrix(self.gram), domain=sympy.ZZ)
        gens = []
        for i in range(self.rank):
            d = abs(int(D[i, i]))
            if d > 1:
                gens.append((reduce_mod_one(Fraction(int(V[j, i]), d) for j in range(self.rank)), d))
        return tuple(gens)

    @property
    def discriminant_invariants(self) -> tuple[int, ...]:
        return tuple(d for _, d in self.discriminant_generators)


@dataclass(frozen=True, order=True)
class DualVector:
    coords: Coords
    norm: Fraction

    def __neg__(self):
        return DualVector(tuple(-x for x in self.coords), self.norm)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __str__(self):
        return "(" + ", ".join(str(x) for x in self.coords) + ")"


@dataclass(frozen=True)
class CosetClass:
    """A class of ``L^v / L`` with canonical representative in ``[0, 1)^rank``."""

    representative: DualVector
    order: int
    norm_mod_2: Fraction

    def is_trivial(self) -> bool:
        return self.order == 1


@dataclass(frozen=True)
class DivisorKind:
    """Which Heegner divisors a reflective input may carry."""

    name: str
    p: int | None = None

    def __post_init__(self):
        if self.name == "two_reflective":
            if self.p is not None:
                raise ValueError("two_reflective takes no prime")
        elif self.name == "prime_level":
            if self.p is None or not sympy.isprime(self.p):
                raise ValueError(f"prime_level needs a prime, got {self.p}")
        else:
            raise ValueError(f"unknown divisor kind {self.name!r}")

    @property
    def target_norm(self) -> Fraction:
        """L-side norm (mod 2) of the classes carrying extra divisors."""
        return Fraction(1, 2) if self.p is None else Fraction(2, self.p) % 2

    @property
    def pole_shift(self) -> Fraction:
        """Hyperbolic norm ``2n - (l, l)`` of those classes' singular terms."""
        return -self.target_norm if self.p is None else Fraction(-2, self.p)

    @property
    def chain_parameter(self) -> Fraction:
        return Fraction(6) if self.p is None else Fraction(24, self.p)

    def __str__(self):
        return self.name if self.p is None else f"prime_level({self.p})"


TWO_REFLECTIVE = DivisorKind("two_reflective")


def prime_level(p: int) -> DivisorKind:
    return DivisorKind("prime_level", p)


@dataclass(frozen=True)
class ReflectiveVectorReport:
    vector: tuple[int, ...]
    norm: Fraction
    div: int
    is_reflective: bool


def reduce_mod_one(coords: Iterable) -> Coords:
    return tuple(_frac(x) - math.floor(_frac(x)) for x in coords)


# ---------------------------------------------------------------------------
# construction


def _cartan_A(n: int) -> list[list[int]]:
    return [[2 if i == j else -1 if abs(i - j) == 1 else 0 for j in range(n)] for i in range(n)]


def _cartan_D(n: int) -> list[list[int]]:
    # chain 0-1-...-(n-2) with node n-1 attached to node n-3
    g = _cartan_A(n)
    g[n - 1][n - 2] = g[n - 2][n - 1] = 0
    g[n - 1][n - 3] = g[n - 3][n - 1] = -1
    return g


def _cartan_E8() -> list[list[int]]:
    # Bourbaki labels 1..8: chain 1-3-4-5-6-7-8, node 2 attached to 4
    edges = [(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4)]
    g = [[2 if i == j else 0 for j in range(8)] for i in range(8)]
    for a, b in edges:
        g[a - 1][b - 1] = g[b - 1][a - 1] = -1
    return g


def build_named(family: str, n: int = 1, m: int = 1) -> IntegerLattice:
    """Root lattices ``A_n``, ``D_n``, ``E_8``, ``nA_1`` and ``<2n>``, scaled by ``m``.

    ``A1scaled`` with ``n`` copies is the model ``(Z^n, 2m(.,.))`` of
    ``nA_1(m)``; ``rank1`` is the rank-one lattice ``<2n>``.
    """
    if not isinstance(m, int) or m <= 0:
        raise ValueError(f"scale m must be a positive integer, got {m!r}")
    if family != "E8" and (not isinstance(n, int) or n < 1):
        raise ValueError(f"n must be a positive integer, got {n!r}")
    if family == "A":
        gram, label = _cartan_A(n), f"A{n}"
    elif family == "D":
        if n < 4:
            raise ValueError("D_n needs n >= 4")
        gram, label = _cartan_D(n), f"D{n}"
    elif family == "E8":
        gram, label = _cartan_E8(), "E8"
    elif family == "A1scaled":
        gram, label = [[2 if i == j else 0 for j in range(n)] for i in range(n)], ("A1" if n == 1 else f"{n}A1")
    elif family == "rank1":
        gram, label = [[2 * n]], f"<{2 * n}>"
    else:
        raise ValueError(f"unknown lattice family {family!r}")
    L = IntegerLattice(tuple(map(tuple, gram)), label)
    return L.scaled(m) if m != 1 else L


def direct_sum(*lattices: IntegerLattice) -> IntegerLattice:
    n = sum(L.rank for L in lattices)
    gram = [[0] * n for _ in range(n)]
    off = 0
    for L in lattices:
        for i in range(L.rank):
            for j in range(L.rank):
                gram[off + i][off + j] = L.gram[i][j]
        off += L.rank
    labels = [L.label for L in lattices if L.rank]
    label = "+".join(labels) if labels and all(labels) else None
    return IntegerLattice(tuple(map(tuple, gram)), label)


def det_and_level(L: IntegerLattice) -> tuple[int, int]:
    return L.det, L.level


# ---------------------------------------------------------------------------
# short vectors


def _block_short_vectors(gram, shift: Sequence[Fraction], bound: Fraction) -> list[tuple[tuple[Fraction, ...], Fraction]]:
    """All ``v`` in ``shift + Z^r`` with ``(v, v) <= bound`` for one block.

    Recursive Fincke-Pohst search on the exact LDL^T factorisation, last
    coordinate first.
    """
    r = len(gram)
    if r == 0:
        return [((), Fraction(0))] if bound >= 0 else []
    lower, piv = _ldl(gram)
    y: list[Fraction] = [Fraction(0)] * r
    out = []

    def search(i: int, rem: Fraction) -> None:
        c = sum((lower[j][i] * y[j] for j in range(i + 1, r)), Fraction(0))
        s = math.isqrt(math.floor(rem / piv[i])) + 1
        lo = math.ceil(-c - s - shift[i])
        hi = math.floor(-c + s - shift[i])
        for k in range(lo, hi + 1):
            yi = shift[i] + k
            t = yi + c
            q = piv[i] * t * t
            if q > rem:
                continue
            y[i] = yi
            if i == 0:
                out.append((tuple(y), bound - rem + q))
            else:
                search(i - 1, rem - q)

    if bound >= 0:
        search(r - 1, bound)
    return out


@lru_cache(maxsize=512)
def _block_short_vectors_sorted(gram: tuple, shift: tuple, bound: Fraction) -> tuple:
    vecs = _block_short_vectors(gram, shift, bound)
    vecs.sort(key=lambda t: t[1])
    return tuple(vecs)


def _short_vectors(L: IntegerLattice, shift: Sequence[Fraction], bound: Fraction) -> list[tuple[Coords, Fraction]]:
    """All ``v`` in ``shift + L`` with ``(v, v) <= bound``, unsorted.

    Orthogonal blocks are enumerated separately and recombined, which keeps
    sums such as ``2E8 + A1`` cheap.
    """
    bound = _frac(bound)
    blocks = L.blocks
    per_block = []
    for blk in blocks:
        sub = tuple(tuple(L.gram[i][j] for j in blk) for i in blk)
        per_block.append(_block_short_vectors_sorted(sub, tuple(shift[i] for i in blk), bound))
    combos: list[tuple[tuple, Fraction]] = [((), Fraction(0))]
    for vecs in per_block:
        nxt = []
        for coords, nrm in combos:
            room = bound - nrm
            for v, vn in vecs:
                if vn > room:
                    break
                nxt.append((coords + v, nrm + vn))
        combos = nxt
    order = [i for blk in blocks for i in blk]
    if order == list(range(L.rank)):
        return combos
    out = []
    for coords, nrm in combos:
        c = [Fraction(0)] * L.rank
        for pos, i in enumerate(order):
            c[i] = coords[pos]
        out.append((tuple(c), nrm))
    return out


def _shift_of(L: IntegerLattice, coset) -> Coords:
    if coset is None:
        return (Fraction(0),) * L.rank
    if isinstance(coset, CosetClass):
        coset = coset.representative
    if isinstance(coset, DualVector):
        coset = coset.coords
    return reduce_mod_one(coset)


def enumerate_vectors(L: IntegerLattice, coset=None, norm=0) -> list[DualVector]:
    """Every ``v`` in ``L + coset`` with ``(v, v) = norm``, lexicographically sorted.

    ``coset`` may be a :class:`CosetClass`, a :class:`DualVector`, a
    coordinate tuple, or ``None`` for ``L`` itself.
    """
    norm = _frac(norm)
    if norm < 0:
        raise ValueError("norm must be non-negative")
    shift = _shift_of(L, coset)
    vecs = [DualVector(c, n) for c, n in _short_vectors(L, shift, norm) if n == norm]
    vecs.sort()
    return vecs


def vectors_up_to(L: IntegerLattice, bound, coset=None) -> list[tuple[Coords, Fraction]]:
    """Coordinates and norms of all ``v`` in ``L + coset`` with ``(v, v) <= bound``."""
    return _short_vectors(L, _shift_of(L, coset), _frac(bound))


def count_vectors(L: IntegerLattice, coset=None, norm=0) -> int:
    """``len(enumerate_vectors(...))`` without materialising products of blocks."""
    norm = _frac(norm)
    if norm < 0:
        return 0
    shift = _shift_of(L, coset)
    total = Counter({Fraction(0): 1})
    for blk in L.blocks:
        sub = tuple(tuple(L.gram[i][j] for j in blk) for i in blk)
        counts = Counter(n for _, n in _block_short_vectors_sorted(sub, tuple(shift[i] for i in blk), norm))
        nxt: Counter = Counter()
        for a, ca in total.items():
            for b, cb in counts.items():
                if a + b <= norm:
                    nxt[a + b] += ca * cb
        total = nxt
    return total[norm]


def count_roots(L: IntegerLattice) -> int:
    return count_vectors(L, None, 2)


def count_R_mu(L: IntegerLattice, mu0_half) -> int:
    """Size of ``{s in L^v : 2s in R(L), s - mu0/2 in L}``."""
    coords = mu0_half.coords if isinstance(mu0_half, DualVector) else tuple(_frac(x) for x in mu0_half)
    if len(coords) != L.rank:
        raise ValueError("wrong number of coordinates")
    if any((2 * c).denominator != 1 for c in coords):
        raise ValueError("mu0/2 must be half of a lattice vector")
    try:
        L.pairing_vector(coords)
    except ValueError:
        return 0
    # s in mu0/2 + L has 2s in L, so 2s is a root iff (s, s) = 1/2
    return count_vectors(L, coords, Fraction(1, 2))


def count_C_gamma(L: IntegerLattice, gamma, p: int) -> int:
    """Size of ``{s in L^v : (s, s) = 2/p, s - gamma in L}``."""
    if not sympy.isprime(p):
        raise ValueError(f"{p} is not prime")
    return count_vectors(L, gamma, Fraction(2, p))


# ---------------------------------------------------------------------------
# discriminant group


def coset_class(L: IntegerLattice, coords: Sequence) -> CosetClass:
    rep = reduce_mod_one(coords)
    L.pairing_vector(rep)
    order = math.lcm(*(c.denominator for c in rep)) if rep else 1
    return CosetClass(DualVector(rep, L.norm(rep)), order, L.norm(rep) % 2)


def _combine(L: IntegerLattice, choice: Sequence[tuple[Coords, int]]) -> CosetClass:
    coords = [Fraction(0)] * L.rank
    for gen, w in choice:
        for i in range(L.rank):
            coords[i] += w * gen[i]
    return coset_class(L, coords)


def discriminant_classes(L: IntegerLattice) -> list[CosetClass]:
    """All of ``L^v / L``, trivial class first, then by representative."""
    gens = L.discriminant_generators
    classes = [
        _combine(L, list(zip((g for g, _ in gens), ws)))
        for ws in product(*(range(d) for _, d in gens))
    ]
    classes.sort(key=lambda c: (not c.is_trivial(), c.representative.coords))
    return classes


def reflective_classes(L: IntegerLattice, kind: DivisorKind) -> list[CosetClass]:
    """Classes that may carry reflective divisors besides the ``(-2)``-vectors.

    Norms are L-side: a class of norm ``-q`` in the discriminant form of
    ``2U + L(-1)`` appears here with norm ``+q``.
    """
    gens = L.discriminant_generators
    if kind.name == "two_reflective":
        options = [[0, d // 2] if d % 2 == 0 else [0] for _, d in gens]
        pool = [
            _combine(L, list(zip((g for g, _ in gens), ws)))
            for ws in product(*options)
        ]
        hits = [c for c in pool if c.order == 2 and c.norm_mod_2 == Fraction(1, 2)]
    else:
        if L.level not in (1, kind.p):
            raise ValueError(f"lattice has level {L.level}, not {kind.p}")
        hits = [c for c in discriminant_classes(L) if c.norm_mod_2 == kind.target_norm]
    hits.sort(key=lambda c: c.representative.coords)
    return hits


def _minimal_nontrivial(L: IntegerLattice) -> tuple[Fraction, list[DualVector]]:
    """Shortest vectors of ``L^v`` outside ``L``, found block by block.

    Within a block the search runs over pairing vectors ``y`` with the inverse
    Gram as quadratic form, bounded by the shortest dual basis vector outside
    ``L``.  This avoids listing the discriminant group, which for ``nA1(m)``
    has ``(2m)^n`` elements.
    """
    inv = L.inverse
    best: Fraction | None = None
    found: list[DualVector] = []
    for blk in L.blocks:
        sub = tuple(tuple(inv[i][j] for j in blk) for i in blk)
        outside = [sub[i][i] for i in range(len(blk)) if any(x.denominator != 1 for x in sub[i])]
        if not outside:
            continue
        bound = min(outside)
        if best is not None and bound > best:
            bound = best
        for y, nrm in _block_short_vectors(sub, (Fraction(0),) * len(blk), bound):
            local = [sum((sub[i][j] * y[j] for j in range(len(blk))), Fraction(0)) for i in range(len(blk))]
            if all(x.denominator == 1 for x in local):
                continue
            if best is None or nrm < best:
                best, found = nrm, []
            if nrm == best:
                coords = [Fraction(0)] * L.rank
                for pos, i in enumerate(blk):
                    coords[i] = local[pos]
                found.append(DualVector(tuple(coords), nrm))
    if best is None:
        raise ValueError("no non-trivial discriminant classes")
    found.sort()
    return best, found


def minimal_dual_vectors(L: IntegerLattice, classes: Iterable[CosetClass] | None = None) -> tuple[Fraction, list[DualVector]]:
    """Minimal norm over the given non-trivial classes and the vectors attaining it.

    Defaults to every non-trivial class of ``L^v / L``.
    """
    if classes is None:
        return _minimal_nontrivial(L)
    classes = list(classes)
    if not classes:
        raise ValueError("no non-trivial discriminant classes")
    # any class representative in [0,1)^r bounds the minimum of its coset
    best = min(c.representative.norm for c in classes)
    found: list[DualVector] = []
    for c in classes:
        for coords, n in vectors_up_to(L, best, c):
            if n < best:
                best, found = n, []
            if n == best:
                found.append(DualVector(coords, n))
    found = [v for v in found if v.norm == best]
    found.sort()
    return best, found


# ---------------------------------------------------------------------------
# reflections in the ambient indefinite lattice


def reflection_check(v: Sequence[int], ambient_gram: Sequence[Sequence[int]], norm) -> ReflectiveVectorReport:
    """Decide whether a primitive negative-norm vector is reflective.

    ``(v, v) = -2d`` is reflective iff ``div(v)`` is ``d`` or ``2d``.
    """
    v = tuple(int(x) for x in v)
    if len(ambient_gram) != len(v) or any(len(row) != len(v) for row in ambient_gram):
        raise ValueError("vector and Gram matrix sizes differ")
    if math.gcd(*v) != 1:
        raise ValueError(f"{v} is not primitive")
    norm = _frac(norm)
    n = len(v)
    pairings = [sum(ambient_gram[i][j] * v[j] for j in range(n)) for i in range(n)]
    actual = sum(v[i] * pairings[i] for i in range(n))
    if actual != norm:
        raise ValueError(f"declared norm {norm} but (v, v) = {actual}")
    if norm >= 0:
        raise ValueError("reflective vectors have negative norm")
    d = -norm / 2
    div = math.gcd(*pairings)
    return ReflectiveVectorReport(v, norm, div, div in (d, 2 * d))
