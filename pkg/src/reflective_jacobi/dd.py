"""Weights of modular forms vanishing exactly on a diagonal divisor.

For a weak Jacobi form ``c * sum_{s in S} zeta^s + 2k + O(q)`` of weight 0
the constant-term identity pins down ``k``; admissibility then needs
``k > 0`` and ``k >= rank / 2``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .eichler_zagier import solve_weak_basis
from .jacobi import JacobiExpansion, singular_part
from .lattice import DualVector, IntegerLattice, build_named, coset_class, minimal_dual_vectors

NA1_BOX = 12  # n, m <= NA1_BOX for the nA1(m) scan
ANDN_MAX_N = 10
ANDN_MAX_M = 6


@dataclass(frozen=True)
class DdCandidate:
    family: str  # nA1 | A | D
    n: int
    m: int
    c: int
    k: Fraction
    admissible: bool
    exclusion_reason: str | None = None
    convention: str | None = None  # only for D4: "orbit" (24 vectors) or "vector" (8)

    @property
    def rank(self) -> int:
        return self.n

    def triple(self) -> tuple[int, int, Fraction]:
        """``(m, n, k)``."""
        return self.m, self.n, self.k


def dd_weight(L: IntegerLattice, S: Sequence[DualVector], c: int) -> Fraction:
    """``k = ((12/rank) c sum (s,s) - c |S|) / 2``."""
    if L.rank == 0:
        raise ValueError("rank 0 lattice")
    if not S:
        raise ValueError("empty vector set")
    total = sum((s.norm for s in S), Fraction(0))
    return (Fraction(12, L.rank) * c * total - c * len(S)) / 2


def _minimal_c(k1: Fraction) -> int:
    """Smallest ``c`` with ``2 c k1`` integral."""
    return (2 * k1).denominator


# ---------------------------------------------------------------------------
# the (5, 1) exclusion


@dataclass(frozen=True)
class M5Exclusion:
    q0: dict  # r -> coefficient of zeta^r
    q1_zeta5: Fraction
    negative_singular: tuple  # (n, r, coefficient)
    excluded: bool
    reason: str


def exclude_m5(N: int = 3) -> M5Exclusion:
    """Build the weight-0 index-5 form with ``q^0 = 5 zeta^{+-1} + 2`` and scan its singular part."""
    psi = solve_weak_basis(5, 0, {1: 5, 0: 2}, N)
    q0 = {y[0]: c for y, c in sorted(psi.layer(0).items())}
    neg = tuple((n, psi.index.pairing_vector(v.coords)[0], c) for n, v, c in singular_part(psi) if c < 0)
    excluded = bool(neg)
    reason = "excluded: non-holomorphic product" if excluded else "no negative singular coefficient in window"
    return M5Exclusion(q0, psi[(1, (5,))], neg, excluded, reason)


def companion_forms(N: int = 3) -> list[tuple[int, JacobiExpansion]]:
    """The forms ``zeta^{+-1} + 2k + O(q)`` on ``A1(m)``, ``m <= 4``, with ``k = 6/m - 1``."""
    out = []
    for m in range(1, 5):
        k = Fraction(6, m) - 1
        out.append((m, solve_weak_basis(m, 0, {1: 1, 0: 2 * k}, N)))
    return out


# ---------------------------------------------------------------------------
# enumeration


def _decide(family: str, n: int, m: int, k1: Fraction, rank: int, convention=None,
            holomorphy=None) -> DdCandidate:
    if k1 <= 0:
        return DdCandidate(family, n, m, 1, k1, False, "k <= 0", convention)
    c = _minimal_c(k1)
    k = c * k1
    if c > 1:
        # forms with c > 1 that are not powers of a c = 1 form need a holomorphy check
        if k < Fraction(rank, 2):
            return DdCandidate(family, n, m, c, k, False, f"k = {k} < {Fraction(rank, 2)}", convention)
        if holomorphy is None:
            return DdCandidate(family, n, m, c, k, False, "needs holomorphy check", convention)
        report = holomorphy()
        return DdCandidate(family, n, m, c, k, not report.excluded,
                           None if not report.excluded else report.reason, convention)
    if k1 < Fraction(rank, 2):
        return DdCandidate(family, n, m, 1, k1, False, f"k = {k1} < {Fraction(rank, 2)}", convention)
    return DdCandidate(family, n, m, 1, k1, True, None, convention)


def enumerate_nA1(c_max: int = 5) -> list[DdCandidate]:
    """Every ``(n, m)`` with ``n, m <= 12`` and its verdict; ``k = c (6/m - n)``.

    Outside ``nm <= 5`` the weight is non-positive for every ``c``.
    """
    if c_max < 5:
        raise ValueError("c_max must be at least 5 to reach the m = 5 case")
    out = []
    for n in range(1, NA1_BOX + 1):
        for m in range(1, NA1_BOX + 1):
            L = build_named("A1scaled", n, m)
            _, S = minimal_dual_vectors(L)
            k1 = dd_weight(L, S, 1)
            hol = exclude_m5 if (n, m) == (1, 5) else None
            cand = _decide("nA1", n, m, k1, n, holomorphy=hol)
            if cand.c > c_max:
                cand = DdCandidate("nA1", n, m, cand.c, cand.k, False, f"needs c = {cand.c} > c_max")
            out.append(cand)
    return out


def diagonal_vectors(L: IntegerLattice, convention: str = "orbit") -> list[DualVector]:
    """Minimal dual vectors defining the diagonal divisor.

    ``orbit`` takes the minimum over all non-trivial classes (for ``D4`` this
    adds the two spinor classes); ``vector`` restricts to the class of ``e_1``
    (first basis vector of the dual) for ``D_n``.
    """
    if convention == "orbit":
        return minimal_dual_vectors(L)[1]
    if convention == "vector":
        return minimal_dual_vectors(L, [_d_vector_class(L)])[1]
    raise ValueError(f"unknown convention {convention!r}")


def _d_vector_class(L: IntegerLattice):
    """Class of the fundamental weight at the end of the long arm (norm 1).

    For ``D4`` all three non-trivial classes look alike; this picks one.
    """
    w1 = L.inverse[0]
    return coset_class(L, w1)


def enumerate_AnDn(max_n: int = ANDN_MAX_N, max_m: int = ANDN_MAX_M) -> list[DdCandidate]:
    """``A_n(m)``, ``2 <= n``, and ``D_n(m)``, ``4 <= n``, up to the given bounds.

    ``D4`` is reported under both the orbit and the vector convention.
    """
    out = []
    for n in range(2, max_n + 1):
        base = build_named("A", n)
        S1 = diagonal_vectors(base)
        for m in range(1, max_m + 1):
            L = base.scaled(m)
            S = [DualVector(v.coords, v.norm / m) for v in S1]
            out.append(_decide("A", n, m, dd_weight(L, S, 1), n))
    for n in range(4, max_n + 1):
        base = build_named("D", n)
        conventions = ("orbit", "vector") if n == 4 else ("orbit",)
        for conv in conventions:
            S1 = diagonal_vectors(base, conv)
            for m in range(1, max_m + 1):
                L = base.scaled(m)
                S = [DualVector(v.coords, v.norm / m) for v in S1]
                out.append(_decide("D", n, m, dd_weight(L, S, 1), n, conv if n == 4 else None))
    return out


def admissible_pairs(cands: Sequence[DdCandidate]) -> list[tuple[str, int, int]]:
    """Distinct admissible ``(family, n, m)``, in enumeration order."""
    seen = []
    for c in cands:
        key = (c.family, c.n, c.m)
        if c.admissible and key not in seen:
            seen.append(key)
    return seen


def nA1_identity_holds(n: int, m: int, c: int) -> bool:
    """``m (2 n c + 2 k) == 12 c`` for the weight from :func:`dd_weight`."""
    L = build_named("A1scaled", n, m)
    _, S = minimal_dual_vectors(L)
    k = dd_weight(L, S, c)
    return m * (2 * n * c + 2 * k) == 12 * c


__all__ = [
    "DdCandidate", "M5Exclusion", "admissible_pairs", "companion_forms", "dd_weight", "diagonal_vectors",
    "enumerate_AnDn", "enumerate_nA1", "exclude_m5", "nA1_identity_holds",
]
