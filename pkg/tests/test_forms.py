from __future__ import annotations

import pytest

from reflective_jacobi.forms import FormSyntaxError, build_form, describe, parse_form, parse_lattice
from reflective_jacobi.jacobi import tensor, theta_series
from reflective_jacobi.lattice import build_named, direct_sum


@pytest.mark.parametrize("name, rank, det", [("E8", 8, 1), ("2E8+A1", 17, 2), ("A1(5)", 1, 10), ("<4>", 1, 4),
                                             ("D4", 4, 4), ("3A1", 3, 8), ("A2(3)", 2, 27)])
def test_parse_lattice(name, rank, det):
    L = parse_lattice(name)
    assert (L.rank, L.det) == (rank, det)


@pytest.mark.parametrize("bad", ["F4", "<3>", "A", "E8+", "0A1"])
def test_parse_lattice_errors(bad):
    with pytest.raises(FormSyntaxError):
        parse_lattice(bad)


def test_parse_form():
    spec = parse_form("  E4 * E41  x thetaE8 /Delta ")
    assert spec.factors == (("E4", "E41"), ("thetaE8",))
    assert spec.delta_divisions == 1
    assert describe(spec) == "E4*E41 x thetaE8 / Delta"
    assert parse_form("thetaL(2E8+A1)").factors == (("thetaL(2E8+A1)",),)


@pytest.mark.parametrize("bad", ["", "E4/E6", "E4 x", "phi02", "Delta/ E4"])
def test_parse_form_errors(bad):
    with pytest.raises(FormSyntaxError):
        parse_form(bad)


def test_scalar_placement_does_not_matter():
    a = build_form("E4*E41 x thetaE8 / Delta", 2)
    b = build_form("E41 x E4*thetaE8 / Delta", 2)
    assert a == b


def test_theta_atoms():
    assert build_form("thetaL(A2) x thetaL(A1)", 3) == tensor(theta_series(build_named("A", 2), 3),
                                                             theta_series(build_named("A1scaled", 1, 1), 3))
    E8 = build_named("E8")
    assert build_form("thetaL(2E8)", 2) == theta_series(direct_sum(E8, E8), 2)


def test_window_and_weight():
    phi = build_form("E41 x thetaE8 / Delta", 3)
    assert (phi.weight, phi.pole_order, phi.trunc, phi.rank) == (-4, 1, 3, 9)
    with pytest.raises(ValueError):
        build_form("phi01", 0)
