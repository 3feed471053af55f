"""Divisor data, weights and the rank constraints of reflective modular forms.

Everything here is exact.  The differential-operator chains are parameterised
by ``a``: 24 times the order of the pole carried by the extra singular terms
(``a = 6`` for ``q^{-1/4}``, ``a = 24/p`` for ``q^{-1/p}``).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction

import sympy

from .jacobi import JacobiExpansion, mul_scalar, theta_series
from .lattice import (
    TWO_REFLECTIVE,
    CosetClass,
    DivisorKind,
    IntegerLattice,
    build_named,
    count_C_gamma,
    count_R_mu,
    count_roots,
    direct_sum,
    prime_level,
    reflective_classes,
)
from .qseries import delta, eisenstein


class NotReflectiveInput(ValueError):
    """The expansion does not have the singular shape of a reflective input."""


class NonHolomorphicProduct(ValueError):
    """A divisor multiplicity came out negative."""


@dataclass(frozen=True)
class DivisorData:
    beta0: int
    beta_map: dict = field(default_factory=dict)  # CosetClass -> int
    kind: DivisorKind = TWO_REFLECTIVE

    def __post_init__(self):
        if self.beta0 < 0 or any(b < 0 for b in self.beta_map.values()):
            raise NonHolomorphicProduct("negative multiplicity: the product would not be holomorphic")
        if self.beta0 == 0 and not any(self.beta_map.values()):
            raise ValueError("at least one multiplicity must be positive")

    def __hash__(self):
        return hash((self.beta0, tuple(sorted(self.beta_map.items(), key=lambda kv: kv[0].representative.coords)),
                     self.kind))


def _as_int(x: Fraction, what: str) -> int:
    if x.denominator != 1:
        raise NotReflectiveInput(f"{what} = {x} is not an integer")
    return int(x)


def derive_divisor(phi: JacobiExpansion, kind: DivisorKind = TWO_REFLECTIVE) -> DivisorData:
    """Read ``beta_0`` and the class multiplicities off the singular coefficients.

    Trivial-class terms of hyperbolic norm ``-2`` must all equal ``beta_0``;
    terms of a reflective class with hyperbolic norm ``-1/2`` (resp. ``-2/p``)
    must all equal ``beta_mu - beta_0`` (resp. ``beta_gamma``).  Any other
    singular term is rejected.
    """
    if phi.weight != 0:
        raise ValueError(f"expected weight 0, got {phi.weight}")
    if phi.pole_order > 1:
        raise ValueError(f"pole order {phi.pole_order} exceeds 1")
    L = phi.index
    classes = reflective_classes(L, kind)
    by_rep = {c.representative.coords: c for c in classes}
    shift = kind.pole_shift

    singular = [(n, y, c) for (n, y), c in phi.items() if phi.hyperbolic_norm(n, y) < 0]
    residues, den = L.residues_from_pairings([y for _, y, _ in singular])
    seen: dict = {}  # class (None for trivial) -> {value: example key}
    for (n, y, c), res in zip(singular, residues):
        h = phi.hyperbolic_norm(n, y)
        if not res.any():
            if h != -2:
                raise NotReflectiveInput(f"trivial-class singular term at {(n, y)} has hyperbolic norm {h}")
            seen.setdefault(None, {}).setdefault(c, (n, y))
            continue
        cls = by_rep.get(tuple(Fraction(int(x), den) for x in res))
        if cls is None or h != shift:
            raise NotReflectiveInput(f"singular term at {(n, y)} (hyperbolic norm {h}) fits no reflective class")
        seen.setdefault(cls, {}).setdefault(c, (n, y))

    for key, values in seen.items():
        if len(values) > 1:
            where = "trivial class" if key is None else f"class {key.representative}"
            raise NotReflectiveInput(f"coefficients along the {where} are not constant: {sorted(values)}")

    beta0 = _as_int(phi.coefficient(-1, (0,) * L.rank) if phi.pole_order else Fraction(0), "beta_0")
    if None in seen and next(iter(seen[None])) != beta0:
        raise NotReflectiveInput("root coefficients disagree with the q^-1 coefficient")
    beta_map = {}
    for cls in classes:
        value = next(iter(seen[cls])) if cls in seen else Fraction(0)
        beta_map[cls] = _as_int(value + beta0 if kind.p is None else value, "multiplicity")
    return DivisorData(beta0, beta_map, kind)


# ---------------------------------------------------------------------------
# weights


def _root_term(L: IntegerLattice, beta0) -> Fraction:
    if L.rank == 0:
        raise ValueError("rank 0 lattice")
    return beta0 * (12 + count_roots(L) * (Fraction(12, L.rank) - Fraction(1, 2)))


def weight_two_reflective(L: IntegerLattice, D: DivisorData) -> Fraction:
    if D.kind.p is not None:
        raise ValueError("divisor data is not of two-reflective kind")
    k = _root_term(L, D.beta0)
    coeff = Fraction(3, L.rank) - Fraction(1, 2)
    for cls, beta in D.beta_map.items():
        k += coeff * (beta - D.beta0) * count_R_mu(L, cls.representative)
    return k


def weight_prime_level(L: IntegerLattice, p: int, D: DivisorData) -> Fraction:
    if D.kind.p != p:
        raise ValueError(f"divisor data has kind {D.kind}, not prime level {p}")
    if L.level not in (1, p):
        raise ValueError(f"lattice level {L.level} is not {p}")
    k = _root_term(L, D.beta0)
    coeff = Fraction(12, p * L.rank) - Fraction(1, 2)
    for cls, beta in D.beta_map.items():
        k += coeff * beta * count_C_gamma(L, cls, p)
    return k


# ---------------------------------------------------------------------------
# differential-operator chains


@dataclass(frozen=True)
class ClassificationConstants:
    n0: int
    a: Fraction
    d: Fraction
    beta0: Fraction
    c1: Fraction
    c2: Fraction
    c3: Fraction
    d1: Fraction
    d2: Fraction
    d3: Fraction
    u: Fraction


def chain_constants(n0: int, a, d, beta0) -> ClassificationConstants:
    if n0 in (24, 28, 32):
        raise ZeroDivisionError(f"the chain is undefined at rank {n0}")
    a, d, b = Fraction(a), Fraction(d), Fraction(beta0)
    c1 = (n0 - a) / (n0 - 24)
    c2 = c1 * (n0 - a - 4) / (n0 - 28)
    c3 = c2 * (n0 - a - 8) / (n0 - 32)
    d1 = n0 * (d - 24 * b) / (n0 - 24)
    d2 = (n0 - 4) * (d1 - 24 * b) / (n0 - 28)
    d3 = (n0 - 8) * (d2 - 24 * b) / (n0 - 32)
    u = (d - 504 * b) * (c1 - c3) + (d1 + 240 * b) * (c3 - 1) + d3 * (1 - c1)
    return ClassificationConstants(n0, a, d, b, c1, c2, c3, d1, d2, d3, u)


def u_linear_form(n0: int, a) -> tuple[Fraction, Fraction]:
    """``(A, B)`` with ``u = A d + B beta0``."""
    return chain_constants(n0, a, 1, 0).u, chain_constants(n0, a, 0, 1).u


class UVerdict(enum.Enum):
    NONZERO = "nonzero"
    IDENTICALLY_ZERO = "undetermined"
    ROOT = "vanishes at one ratio"


@dataclass(frozen=True)
class UAnalysis:
    A: Fraction
    B: Fraction
    verdict: UVerdict
    root: Fraction | None  # d / beta0 where u = 0, if admissible


def analyse_u(n0: int, a) -> UAnalysis:
    """Sign analysis of ``u`` over ``d >= n0``, ``beta0 >= 1``.

    On that region ``d / beta0`` ranges over every positive rational, so ``u``
    can vanish only if ``-B/A`` is positive.
    """
    A, B = u_linear_form(n0, a)
    if A == 0:
        return UAnalysis(A, B, UVerdict.IDENTICALLY_ZERO if B == 0 else UVerdict.NONZERO, None)
    r = -B / A
    if r > 0:
        return UAnalysis(A, B, UVerdict.ROOT, r)
    return UAnalysis(A, B, UVerdict.NONZERO, None)


def solve_g_vanishing(n0: int, a) -> Fraction | None:
    """``d / beta0`` with ``d_2 = d + 240 beta0``, when ``c_2 = 1``; else ``None``."""
    if chain_constants(n0, a, 0, 0).c2 != 1:
        return None
    alpha = chain_constants(n0, a, 1, 0).d2
    gamma = chain_constants(n0, a, 0, 1).d2
    if alpha == 1:
        return None
    return (240 - gamma) / (alpha - 1)


def singular_weight_vanishes(weight, n0: int) -> bool:
    """True when a holomorphic Jacobi form of this weight and rank must be zero."""
    return Fraction(weight) < Fraction(n0, 2)


@dataclass(frozen=True)
class CompleteDivisorReport:
    n0: int
    R: int
    g0: Fraction
    h0: Fraction
    verdict: str  # possible | impossible | forced-unimodular-16


def complete_divisor_case(n0: int, R: int) -> CompleteDivisorReport:
    if not 1 <= n0 <= 23:
        raise ValueError("rank must lie in 1..23")
    if R < 0:
        raise ValueError("root count must be non-negative")
    g0 = R * (1 - Fraction(14, n0)) + 6 * (n0 - 26)
    h0 = Fraction(24 * R, n0) - 720
    if (singular_weight_vanishes(4, n0) and g0) or (singular_weight_vanishes(6, n0) and h0):
        verdict = "impossible"
    elif n0 == 16 and R == 480:
        verdict = "forced-unimodular-16"
    else:
        verdict = "possible"
    return CompleteDivisorReport(n0, R, g0, h0, verdict)


def complete_divisor_input(L: IntegerLattice, N: int) -> JacobiExpansion:
    """``E4^((24 - rank)/8) theta_L / Delta`` for unimodular ``L`` of rank 8, 16 or 24."""
    if not L.is_unimodular or L.rank % 8 or L.rank > 24:
        raise ValueError("needs an even unimodular lattice of rank 8, 16 or 24")
    e = (24 - L.rank) // 8
    scalar = delta(N + 1, inverse=True)
    if e:
        scalar = eisenstein("E4", N + 1) ** e * scalar
    return mul_scalar(theta_series(L, N + 1), scalar)


# ---------------------------------------------------------------------------
# prime level bounds


def riemann_roch_rank_bound(p: int) -> Fraction:
    if not sympy.isprime(p):
        raise ValueError(f"{p} is not prime")
    return 8 + Fraction(24, p + 1)


def rr_inequality(nu0: int, nu_inf: int, n0: int, p: int) -> bool:
    mid = p * nu0 + nu_inf
    return -1 <= mid <= (4 - Fraction(n0, 2)) * (p + 1) / 12


def min_root_bound(n0: int, p: int, k_over_beta0) -> int:
    """Least ``|R(L)|`` compatible with weight ``k_over_beta0 * beta0``."""
    if Fraction(12, p * n0) - Fraction(1, 2) > 0:
        raise ValueError("class term has positive coefficient; no root bound follows")
    slope = Fraction(12, n0) - Fraction(1, 2)
    if slope <= 0:
        raise ValueError("root term does not grow with |R|; no bound follows")
    need = (Fraction(k_over_beta0) - 12) / slope
    return max(0, math.ceil(need))


# ---------------------------------------------------------------------------
# the lattices 2E8 + <2n>


@dataclass(frozen=True)
class TnReport:
    n: int
    roots: int
    class_counts: tuple  # |R_mu| for each two-reflective class
    formula_weight_per_beta0: Fraction
    required_weight_per_beta0: Fraction
    beta_ratio: Fraction | None  # beta_mu / beta0 when a class contributes
    obstructed: bool


def check_Tn(n: int) -> TnReport:
    """Compare the weight formula on ``2E8 + <2n>`` with the rank-17 weight ``75 beta0``."""
    if n < 1:
        raise ValueError("n must be positive")
    E8 = build_named("E8")
    L = direct_sum(E8, E8, build_named("rank1", n))
    required = solve_g_vanishing(17, 6) / 2
    roots = count_roots(L)
    base = 12 + roots * (Fraction(12, 17) - Fraction(1, 2))
    counts = tuple(count_R_mu(L, c.representative) for c in reflective_classes(L, TWO_REFLECTIVE))
    S = sum(counts)
    if S == 0:
        return TnReport(n, roots, counts, base, required, None, base != required)
    # sum (beta_mu/beta0 - 1)|R_mu| = x, shared by the classes that contribute
    x = (required - base) / (Fraction(3, 17) - Fraction(1, 2))
    ratio = 1 + x / S
    return TnReport(n, roots, counts, required if ratio >= 0 else base, required, ratio, ratio < 0)


# ---------------------------------------------------------------------------
# rank tables


@dataclass(frozen=True)
class RankRow:
    rank: str
    status: str  # admissible | excluded | undetermined | unconstrained
    detail: str
    derived: bool  # False for rows recorded from overlattice arguments
    source: str


def _two_reflective_rows() -> list[RankRow]:
    rows = [RankRow("<= 12", "unconstrained", "weight-6 form need not vanish below rank 13", True,
                    "weight-6 chain")]
    for n0 in range(13, 24):
        if n0 <= 14:
            ua = analyse_u(n0, 6)
            status = "excluded" if ua.verdict is UVerdict.NONZERO else "admissible"
            rows.append(RankRow(str(n0), status, f"u = {ua.A} d + {ua.B} beta0, {ua.verdict.value}", True,
                                "weight-6 chain"))
            continue
        ratio = solve_g_vanishing(n0, 6)
        if ratio is not None:
            rows.append(RankRow(str(n0), "admissible", f"c2 = 1, d = {ratio} beta0, k = {ratio / 2} beta0", True,
                                "weight-4 chain"))
            continue
        if n0 == 16:
            rep = complete_divisor_case(16, 480)
            rows.append(RankRow("16", "admissible", f"no extra classes; unimodular with |R| = 480 "
                                f"(g0 = {rep.g0}, h0 = {rep.h0}), k = 12 + 480(12/16 - 1/2) = 132",
                                True, "complete 2-divisor chain"))
            continue
        rows.append(RankRow(str(n0), "excluded", "c2 != 1 and no root count makes g0 = h0 = 0", True,
                            "weight-4 chain + complete 2-divisor chain"))
    rows.append(RankRow("24", "admissible", "unimodular, k = 12 + |R|(12/24 - 1/2) = 12 beta0", True,
                        "weight formula at rank 24"))
    rows.append(RankRow(">= 13 (signature (2, n0+2))", "documented",
                        "no 2-reflective lattice for n >= 15, n != 19, except II_{2,18} and II_{2,26}",
                        False, "overlattice reduction"))
    return rows


def _prime_level_rows(p: int) -> list[RankRow]:
    a = Fraction(24, p)
    bound = riemann_roch_rank_bound(p)
    rows = [RankRow("<= 8", "unconstrained", "extra classes may be empty", True, "complete 2-divisor chain")]
    for n0 in range(9, 24):
        ratio = solve_g_vanishing(n0, a)
        if ratio is not None:
            ua = analyse_u(n0, a)
            rows.append(RankRow(str(n0), "admissible",
                                f"c2 = 1, d = {ratio} beta0, k = {ratio / 2} beta0; u {ua.verdict.value}",
                                True, "weight-4 chain"))
            continue
        if n0 > bound:
            rows.append(RankRow(str(n0), "excluded", f"g != 0 forces rank <= {bound}", True,
                                "Riemann-Roch bound"))
            continue
        if n0 >= 13:
            ua = analyse_u(n0, a)
            if ua.verdict is UVerdict.NONZERO:
                rows.append(RankRow(str(n0), "excluded", f"u = {ua.A} d + {ua.B} beta0 has no admissible zero",
                                    True, "weight-6 chain"))
            elif ua.verdict is UVerdict.IDENTICALLY_ZERO:
                rows.append(RankRow(str(n0), "undetermined", "u vanishes identically; weight not determined",
                                    True, "weight-6 chain"))
            else:
                rows.append(RankRow(str(n0), "admissible", f"u = 0 only at d = {ua.root} beta0", True,
                                    "weight-6 chain"))
            continue
        rows.append(RankRow(str(n0), "admissible", f"within rank <= {bound}", True, "Riemann-Roch bound"))
    documented = {
        2: "no reflective lattice of level 2 for n > 22 except II_{2,26}(2)",
        3: "no reflective lattice of level 3 for n >= 16, n != 20, except II_{2,18}(3) and II_{2,26}(3)",
    }.get(p, f"no reflective lattice of level {p} for n > 10 + 24/(p+1) except II_{{2,18}}({p}) and II_{{2,26}}({p})")
    rows.append(RankRow("signature (2, n)", "documented", documented, False, "overlattice reduction"))
    return rows


def rank_classification(kind: DivisorKind) -> list[RankRow]:
    if kind.p is None:
        return _two_reflective_rows()
    return _prime_level_rows(kind.p)


def admissible_summary(kind: DivisorKind) -> str:
    """Compact reading of the derived rows, e.g. ``rank <= 13 or 18``."""
    rows = [r for r in rank_classification(kind) if r.derived and r.rank.isdigit()]
    ok = [int(r.rank) for r in rows if r.status in ("admissible", "undetermined")]
    if kind.p is None:
        return "rank <= 12 or " + " or ".join(str(n) for n in ok)
    low = [n for n in ok if n <= 8 + 24 // (kind.p + 1)]
    contiguous = 8
    while contiguous + 1 in low:
        contiguous += 1
    rest = [n for n in ok if n > contiguous]
    out = f"rank <= {contiguous}"
    return out + "".join(f" or {n}" for n in rest)


__all__ = [
    "ClassificationConstants", "CompleteDivisorReport", "DivisorData", "NonHolomorphicProduct",
    "NotReflectiveInput", "RankRow", "TnReport", "UAnalysis", "UVerdict", "admissible_summary", "analyse_u",
    "chain_constants", "check_Tn", "complete_divisor_case", "complete_divisor_input", "derive_divisor",
    "min_root_bound", "prime_level", "rank_classification", "riemann_roch_rank_bound", "rr_inequality",
    "singular_weight_vanishes", "solve_g_vanishing", "u_linear_form", "weight_prime_level",
    "weight_two_reflective", "CosetClass",
]
