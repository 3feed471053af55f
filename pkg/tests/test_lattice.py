from __future__ import annotations

import itertools
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from reflective_jacobi.forms import parse_lattice
from reflective_jacobi.lattice import (
    TWO_REFLECTIVE,
    IntegerLattice,
    build_named,
    count_C_gamma,
    count_R_mu,
    count_roots,
    count_vectors,
    det_and_level,
    direct_sum,
    discriminant_classes,
    enumerate_vectors,
    minimal_dual_vectors,
    prime_level,
    reflection_check,
    reflective_classes,
)

E8 = build_named("E8")
A1 = build_named("A1scaled", 1, 1)


def test_build_named_small_cases():
    assert A1.gram == ((2,),)
    assert build_named("A", 2, 3).gram == ((6, -3), (-3, 6))
    assert build_named("A", 2, 3).det == 27
    assert E8.rank == 8 and E8.det == 1


def test_e8_is_even_unimodular():
    assert E8.is_unimodular
    assert all(E8.gram[i][i] % 2 == 0 for i in range(8))
    assert discriminant_classes(E8) == [discriminant_classes(E8)[0]]


def test_direct_sum():
    assert direct_sum(E8, A1).rank == 9
    assert direct_sum(E8, A1).det == 2
    assert direct_sum(E8, IntegerLattice(())).gram == E8.gram
    T1 = direct_sum(E8, E8, build_named("rank1", 1))
    assert (T1.rank, T1.det) == (17, 2)


@pytest.mark.parametrize("name, expected", [("E8", (1, 1)), ("D4", (4, 2)), ("A2", (3, 3)), ("A1", (2, 4)),
                                            ("<6>", (6, 12)), ("A3", (4, 8))])
def test_det_and_level(name, expected):
    assert det_and_level(parse_lattice(name)) == expected


def test_level_matches_dual_basis_denominators():
    # oracle: smallest N with N (x, x)/2 integral over the dual basis and N (x, y) integral
    for name in ("D4", "A2", "A3", "D5", "A1+A2", "<10>"):
        L = parse_lattice(name)
        inv = sympy.Matrix(L.gram).inv()
        dens = [(inv[i, i] / 2).q for i in range(L.rank)]
        dens += [inv[i, j].q for i in range(L.rank) for j in range(L.rank)]
        assert L.level == sympy.ilcm(*dens), name


def test_enumerate_small_sets():
    assert len(enumerate_vectors(E8, None, 2)) == 240
    assert [v.coords for v in enumerate_vectors(A1, None, 0)] == [(0,)]
    half = enumerate_vectors(A1, (Fraction(1, 2),), Fraction(1, 2))
    assert sorted(v.coords for v in half) == [(Fraction(-1, 2),), (Fraction(1, 2),)]


def test_enumerate_rejects_negative_norm():
    with pytest.raises(ValueError):
        enumerate_vectors(E8, None, -2)


@pytest.mark.parametrize("n", [2, 3, 5])
def test_roots_of_t_n(n):
    assert count_roots(direct_sum(E8, E8, build_named("rank1", n))) == 480


def test_roots_vanish_on_rescaled_a1_sums():
    for n, m in itertools.product(range(1, 4), range(2, 4)):
        assert count_roots(build_named("A1scaled", n, m)) == 0


def test_theta_e8_counts():
    # 240 sigma_3(n) at norm 2n
    for n in range(1, 3):
        assert count_vectors(E8, None, 2 * n) == 240 * sympy.divisor_sigma(n, 3)


def test_root_counts_of_root_lattices():
    assert count_roots(build_named("A", 3)) == 12
    assert count_roots(build_named("D", 5)) == 40


def test_r_mu():
    L = direct_sum(E8, E8, A1)
    mu = (0,) * 16 + (Fraction(1, 2),)
    assert count_R_mu(L, mu) == 2
    assert count_R_mu(L, (0,) * 17) == 0
    L2 = direct_sum(E8, E8, build_named("rank1", 3))
    for cls in reflective_classes(L2, TWO_REFLECTIVE):
        assert count_R_mu(L2, cls.representative) == 0


def test_c_gamma():
    A2 = build_named("A", 2)
    nontrivial = [c for c in discriminant_classes(A2) if not c.is_trivial()]
    assert [count_C_gamma(A2, c, 3) for c in nontrivial] == [3, 3]
    trivial = [c for c in discriminant_classes(A2) if c.is_trivial()][0]
    assert count_C_gamma(A2, trivial, 3) == 0


def test_c_gamma_d4_matches_brute_force():
    D4 = build_named("D", 4)
    inv = D4.inverse
    for cls in discriminant_classes(D4):
        if cls.norm_mod_2 != 1:
            continue
        # brute force over a box of dual coordinates y (pairing vectors)
        shift = cls.representative.coords
        count = 0
        for x in itertools.product(range(-3, 4), repeat=4):
            v = [shift[i] + x[i] for i in range(4)]
            if D4.norm(v) == 1:
                count += 1
        assert count_C_gamma(D4, cls, 2) == count == 8
        assert inv  # dual is non-trivial


def test_reflective_classes_a1():
    classes = reflective_classes(A1, TWO_REFLECTIVE)
    assert len(classes) == 1
    c = classes[0]
    assert c.representative.coords == (Fraction(1, 2),)
    assert c.order == 2 and c.norm_mod_2 == Fraction(1, 2)


def test_reflective_classes_prime_level():
    A2 = build_named("A", 2)
    assert len(reflective_classes(A2, prime_level(3))) == 2
    with pytest.raises(ValueError):
        prime_level(4)


def test_reflection_check():
    H = ((0, 1), (1, 0))
    assert reflection_check((1, -1), H, -2).is_reflective
    G = ((0, 1, 0), (1, 0, 0), (0, 0, -6))
    r = reflection_check((0, 0, 1), G, -6)
    assert r.div == 6 and r.is_reflective
    r = reflection_check((1, -3), H, -6)
    assert r.div == 1 and not r.is_reflective
    with pytest.raises(ValueError):
        reflection_check((2, -2), H, -8)
    with pytest.raises(ValueError):
        reflection_check((1, -3, 0), H, -6)


def test_minimal_dual_vectors_nA1():
    best, S = minimal_dual_vectors(build_named("A1scaled", 3, 2))
    assert best == Fraction(1, 4)
    assert len(S) == 6


def test_minimal_dual_vectors_a2():
    best, S = minimal_dual_vectors(build_named("A", 2))
    assert best == Fraction(2, 3) and len(S) == 6


@pytest.mark.parametrize("bad", [((1,),), ((2, 1), (0, 2)), ((2, 3), (3, 2))])
def test_invalid_grams(bad):
    with pytest.raises(ValueError):
        IntegerLattice(bad)


@st.composite
def small_lattices(draw):
    names = draw(st.lists(st.sampled_from(["A1", "A2", "A3", "D4", "<4>", "<6>"]), min_size=1, max_size=3))
    m = draw(st.integers(1, 3))
    L = parse_lattice("+".join(names))
    return L.scaled(m) if m > 1 else L


@settings(max_examples=25, deadline=None)
@given(small_lattices())
def test_det_multiplicative_and_dual_counts(L):
    assert direct_sum(L, A1).det == 2 * L.det
    # |L^v / L| = det; listing the group is only cheap for small det
    if L.det <= 500:
        assert len(discriminant_classes(L)) == L.det


@settings(max_examples=25, deadline=None)
@given(small_lattices(), st.integers(0, 6))
def test_vectors_are_symmetric(L, n):
    vecs = enumerate_vectors(L, None, 2 * n)
    coords = {v.coords for v in vecs}
    assert coords == {tuple(-c for c in v.coords) for v in vecs}
    assert all(L.norm(v.coords) == 2 * n for v in vecs)
