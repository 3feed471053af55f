from __future__ import annotations

from fractions import Fraction

import pytest
import sympy

from reflective_jacobi import reflective as R
from reflective_jacobi.forms import build_form, parse_lattice
from reflective_jacobi.lattice import TWO_REFLECTIVE, build_named, direct_sum, prime_level, reflective_classes

E8 = build_named("E8")


# ---------------------------------------------------------------------------
# divisors and weights


def test_divisor_of_rank17_composite(composites):
    phi = composites["E41 x thetaE8 x thetaE8 / Delta"]
    D = R.derive_divisor(phi)
    assert D.beta0 == 1
    assert list(D.beta_map.values()) == [57]


def test_divisor_of_complete_input():
    phi = R.complete_divisor_input(E8, 2)
    D = R.derive_divisor(phi)
    assert D.beta0 == 1 and D.beta_map == {}
    assert R.weight_two_reflective(E8, D) == 252


def test_negative_multiplicity_is_rejected():
    phi = build_form("E4*E41 x thetaE8 / Delta", 2)
    with pytest.raises(R.NonHolomorphicProduct):
        R.derive_divisor(phi.scale(-1))
    # drive the class multiplicity below zero on every singular class term
    bad = phi
    for (n, y), c in phi.items():
        if phi.hyperbolic_norm(n, y) == Fraction(-1, 2):
            assert c == 56
            bad = bad.with_coefficient(n, y, -2)
    with pytest.raises(R.NonHolomorphicProduct):
        R.derive_divisor(bad)


def test_inconsistent_singular_terms_are_rejected():
    phi = build_form("E4*E41 x thetaE8 / Delta", 2)
    y = next(y for (n, y), c in phi.items() if n == 0 and c == 56)
    with pytest.raises(R.NotReflectiveInput):
        R.derive_divisor(phi.with_coefficient(0, y, 55))
    # phi01 read on A1: the class term is 1, so beta_mu = 1 and beta_0 = 0
    D = R.derive_divisor(build_form("phi01", 2))
    assert (D.beta0, list(D.beta_map.values())) == (0, [1])


def test_non_reflective_singular_term():
    # zeta^{+-2} at q^0 on <4> has hyperbolic norm -1, which fits nothing
    with pytest.raises(R.NotReflectiveInput):
        R.derive_divisor(build_form("phi01*phi01", 2))


def test_weight_examples():
    L = direct_sum(E8, build_named("A1scaled", 1, 1))
    cls = reflective_classes(L, TWO_REFLECTIVE)
    assert R.weight_two_reflective(L, R.DivisorData(1, {cls[0]: 57})) == 195
    L2 = direct_sum(E8, build_named("A1scaled", 2, 1))
    cls2 = reflective_classes(L2, TWO_REFLECTIVE)
    assert len(cls2) == 2
    assert R.weight_two_reflective(L2, R.DivisorData(1, {c: 57 for c in cls2})) == 138
    rootless = parse_lattice("<4>")
    assert R.weight_two_reflective(rootless, R.DivisorData(3, {})) == 36


def test_weight_prime_level():
    L = parse_lattice("4A2")  # rank 8, level 3, |R| = 24
    kind = prime_level(3)
    classes = reflective_classes(L, kind)
    for beta in (0, 1, 5):
        D = R.DivisorData(2, {c: beta for c in classes}, kind)
        assert R.weight_prime_level(L, 3, D) == 2 * (12 + 24)
    with pytest.raises(ValueError):
        R.weight_prime_level(L, 5, R.DivisorData(1, {}, prime_level(5)))


def test_divisor_data_validation():
    with pytest.raises(R.NonHolomorphicProduct):
        R.DivisorData(-1, {})
    with pytest.raises(ValueError):
        R.DivisorData(0, {})


# ---------------------------------------------------------------------------
# chains; oracle is a symbolic re-derivation


def _symbolic_c2_root(a):
    n = sympy.symbols("n")
    a = sympy.Rational(a)
    sols = sympy.solve((n - a) * (n - a - 4) - (n - 24) * (n - 28), n)
    return [s for s in sols if s.is_integer and 9 <= s <= 23]


def _symbolic_ratio(n0, a):
    d, b = sympy.symbols("d b")
    n0, a = sympy.Integer(n0), sympy.Rational(a)
    d1 = n0 * (d - 24 * b) / (n0 - 24)
    d2 = (n0 - 4) * (d1 - 24 * b) / (n0 - 28)
    sol = sympy.solve(sympy.Eq(d + 240 * b, d2), d)[0]
    return sympy.nsimplify(sol / b)


@pytest.mark.parametrize("a", [6, 12, 8, Fraction(24, 5), Fraction(24, 7)])
def test_c2_roots_agree_with_symbolic(a):
    hits = [n0 for n0 in range(9, 24) if R.chain_constants(n0, a, 0, 0).c2 == 1]
    assert hits == _symbolic_c2_root(a)
    for n0 in hits:
        assert R.solve_g_vanishing(n0, a) == Fraction(str(_symbolic_ratio(n0, a)))


def test_known_ratios():
    assert R.solve_g_vanishing(17, 6) == 150
    assert R.solve_g_vanishing(20, 12) == 48
    assert R.solve_g_vanishing(18, 8) == 96
    assert R.solve_g_vanishing(19, 6) is None


def test_chain_undefined_ranks():
    for n0 in (24, 28, 32):
        with pytest.raises(ZeroDivisionError):
            R.chain_constants(n0, 6, 1, 1)


def test_u_analysis():
    assert R.analyse_u(13, 6).verdict is R.UVerdict.NONZERO
    assert R.analyse_u(14, 6).verdict is R.UVerdict.NONZERO
    assert R.analyse_u(16, 12).verdict is R.UVerdict.IDENTICALLY_ZERO
    ua = R.analyse_u(13, 8)
    assert ua.verdict is R.UVerdict.ROOT
    assert R.chain_constants(13, 8, ua.root, 1).u == 0


def test_singular_weight():
    assert R.singular_weight_vanishes(6, 13)
    assert R.singular_weight_vanishes(7, 15)
    assert not R.singular_weight_vanishes(4, 8)


def test_complete_divisor_cases():
    rep = R.complete_divisor_case(16, 480)
    assert (rep.g0, rep.h0, rep.verdict) == (0, 0, "forced-unimodular-16")
    rep = R.complete_divisor_case(20, 0)
    assert rep.g0 == -36 and rep.verdict == "impossible"
    for roots in (2, 100, 1000):
        rep = R.complete_divisor_case(14, roots)
        assert rep.g0 != 0 and rep.verdict == "impossible"
    with pytest.raises(ValueError):
        R.complete_divisor_case(24, 0)


def test_complete_divisor_input_checks():
    with pytest.raises(ValueError):
        R.complete_divisor_input(build_named("A", 2), 2)


# ---------------------------------------------------------------------------
# prime level


def test_rank_bounds():
    assert R.riemann_roch_rank_bound(5) == 12
    assert R.riemann_roch_rank_bound(2) == 16
    assert R.riemann_roch_rank_bound(7) == 11
    assert R.riemann_roch_rank_bound(3) == 14
    with pytest.raises(ValueError):
        R.riemann_roch_rank_bound(9)
    assert R.rr_inequality(0, -1, 8, 5)
    assert not R.rr_inequality(0, 1, 12, 5)


def test_min_root_bound():
    assert R.min_root_bound(20, 2, 24) == 120
    assert R.min_root_bound(18, 3, 48) == 216
    assert R.min_root_bound(20, 2, 12) == 0


# ---------------------------------------------------------------------------
# T_n and tables


def test_tn_reports():
    r2 = R.check_Tn(2)
    assert (r2.roots, r2.formula_weight_per_beta0, r2.obstructed) == (480, Fraction(1884, 17), True)
    assert r2.formula_weight_per_beta0 == 12 + 480 * Fraction(7, 34)
    r4 = R.check_Tn(4)
    assert r4.obstructed and r4.formula_weight_per_beta0 == Fraction(1884, 17)
    r1 = R.check_Tn(1)
    assert (r1.roots, r1.class_counts, r1.beta_ratio, r1.obstructed) == (482, (2,), 57, False)
    with pytest.raises(ValueError):
        R.check_Tn(0)


def test_two_reflective_table():
    rows = {r.rank: r for r in R.rank_classification(TWO_REFLECTIVE)}
    assert "d = 150 beta0" in rows["17"].detail and rows["17"].status == "admissible"
    assert rows["16"].status == "admissible" and "480" in rows["16"].detail
    assert rows["24"].status == "admissible"
    assert rows["13"].status == rows["14"].status == "excluded"
    assert R.admissible_summary(TWO_REFLECTIVE) == "rank <= 12 or 16 or 17 or 24"
    assert any(not r.derived for r in rows.values())


@pytest.mark.parametrize("p, summary", [(2, "rank <= 16 or 20"), (3, "rank <= 13 or 18"), (5, "rank <= 12"),
                                        (7, "rank <= 11")])
def test_prime_level_summaries(p, summary):
    assert R.admissible_summary(prime_level(p)) == summary


def test_prime_level_rows():
    rows = {r.rank: r for r in R.rank_classification(prime_level(3))}
    assert "k = 48 beta0" in rows["18"].detail
    assert rows["14"].status == "excluded"
    rows2 = {r.rank: r for r in R.rank_classification(prime_level(2))}
    assert "k = 24 beta0" in rows2["20"].detail
    assert rows2["16"].status == "undetermined"
