from __future__ import annotations

import pytest

from reflective_jacobi.eichler_zagier import (
    NonUniqueSolutionError,
    NoSolutionError,
    ez_generators,
    solve_weak_basis,
    weak_monomials,
)
from reflective_jacobi.jacobi import elliptic_defects, gritsenko_residual, parity_defects


def test_monomials():
    assert weak_monomials(2, 0) == [(2, 0, 0, 0), (0, 2, 1, 0)]
    assert weak_monomials(1, -4) == []
    assert len(weak_monomials(1, 12)) == 3


def test_basis_reproduces_phi01():
    assert solve_weak_basis(1, 0, {1: 1, 0: 10}, 3) == ez_generators("phi_0_1", 3)


def test_index5_form():
    psi = solve_weak_basis(5, 0, {1: 5, 0: 2}, 3)
    assert psi.layer(0) == {(1,): 5, (0,): 2, (-1,): 5}
    assert psi[(1, (5,))] == -1
    assert psi[(1, (-5,))] == -1
    assert gritsenko_residual(psi) == 0


@pytest.mark.parametrize("target", [{1: 1, 0: 4}, {2: 1, 1: 4, 0: 38}, {2: 3, 0: 66}])
def test_index2_integral_q0_gives_integral_form(target):
    phi = solve_weak_basis(2, 0, target, 5)
    assert all(c.denominator == 1 for _, c in phi.items())
    assert elliptic_defects(phi) == [] and parity_defects(phi) == []


def test_unreachable_target():
    # violates the q^0 identity
    with pytest.raises(NoSolutionError):
        solve_weak_basis(1, 0, {1: 1, 0: 3}, 2)
    with pytest.raises(NoSolutionError):
        solve_weak_basis(1, -4, {0: 1}, 2)


def test_underdetermined_target():
    # E4^3 phi01 and E6^2 phi01 share a q^0 layer
    with pytest.raises(NonUniqueSolutionError) as info:
        solve_weak_basis(1, 12, {1: 1, 0: 10}, 2)
    assert info.value.dimension == 1


def test_generator_arguments():
    with pytest.raises(ValueError):
        ez_generators("phi_0_1", 1)
    with pytest.raises(ValueError):
        ez_generators("phi_2_1", 3)
    with pytest.raises(ValueError):
        solve_weak_basis(0, 0, {0: 1}, 2)


def test_weights():
    assert ez_generators("phi_0_1", 2).weight == 0
    assert ez_generators("phi_m2_1", 2).weight == -2
    assert ez_generators("E_4_1", 2).weight == 4
