"""Weak Jacobi forms of index ``A1(m) = <2m>``.

Classical ``zeta^r`` exponents coincide with pairing vectors ``(r,)`` for the
lattice ``<2m>``, so everything here works with the integer ``r`` directly.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping

import sympy

from .jacobi import HolomorphyClass, JacobiExpansion, classify, jacobi_product, mul_scalar
from .lattice import build_named
from .qseries import QSeries, _euler_power, eisenstein

Poly = dict  # {(n, r): Fraction}


class ConstructionError(RuntimeError):
    """A generator failed its built-in consistency check."""


class NoSolutionError(ValueError):
    pass


class NonUniqueSolutionError(ValueError):
    def __init__(self, dimension: int):
        super().__init__(f"solution space has dimension {dimension}")
        self.dimension = dimension


def _mul(a: Poly, b: Poly, N: int) -> Poly:
    out: Poly = {}
    for (n1, r1), c1 in a.items():
        for (n2, r2), c2 in b.items():
            n = n1 + n2
            if n < N:
                k = (n, r1 + r2)
                out[k] = out.get(k, 0) + c1 * c2
    return {k: c for k, c in out.items() if c}


def _triple_core(N: int) -> Poly:
    """``prod_{n>=1} (1 - q^n zeta)^2 (1 - q^n zeta^-1)^2 (1 - q^n)^-4``."""
    acc: Poly = {(n, 0): Fraction(c) for n, c in enumerate(_euler_power(-4, N)) if c}
    for n in range(1, N):
        for r in (1, -1):
            factor = {(0, 0): 1, (n, r): -1}
            acc = _mul(acc, factor, N)
            acc = _mul(acc, factor, N)
    return acc


def _wp_tail(N: int) -> Poly:
    """``sum_{n>=1} sum_{d|n} d (zeta^d - 2 + zeta^-d) q^n``."""
    out: Poly = {}
    for n in range(1, N):
        for d in sympy.divisors(n):
            for r, w in ((d, 1), (-d, 1), (0, -2)):
                out[(n, r)] = out.get((n, r), 0) + w * d
    return out


def _as_expansion(poly: Poly, weight: int, m: int, N: int) -> JacobiExpansion:
    L = build_named("A1scaled", 1, m)
    return JacobiExpansion(L, weight, {(n, (r,)): c for (n, r), c in poly.items()}, N, 0)


def _check_q0(phi: JacobiExpansion, target: Mapping[int, int], name: str) -> None:
    got = {y[0]: c for y, c in phi.layer(0).items()}
    want = {r: Fraction(c) for r, c in target.items() if c}
    if got != want:
        raise ConstructionError(f"{name}: q^0 layer {got} differs from {want}")


def ez_generators(kind: str, N: int) -> JacobiExpansion:
    """``phi_0_1`` (weight 0), ``phi_m2_1`` (weight -2) or ``E_4_1`` (weight 4), below ``q^N``."""
    if N < 2:
        raise ValueError("N must be at least 2")
    core = _triple_core(N)
    phi_m2 = _mul({(0, 1): 1, (0, 0): -2, (0, -1): 1}, core, N)
    if kind == "phi_m2_1":
        out = _as_expansion(phi_m2, -2, 1, N)
        _check_q0(out, {1: 1, 0: -2, -1: 1}, kind)
        return out
    # phi_0_1 = phi_m2_1 * (1 + 12 wp-tail) + 12 core, where the core is
    # phi_m2_1 / (zeta - 2 + zeta^-1); this is 12 wp(z)/(2 pi i)^2 phi_m2_1 up to sign
    phi0 = dict(phi_m2)
    for k, c in _mul(_wp_tail(N), phi_m2, N).items():
        phi0[k] = phi0.get(k, 0) + 12 * c
    for k, c in core.items():
        phi0[k] = phi0.get(k, 0) + 12 * c
    phi0 = {k: c for k, c in phi0.items() if c}
    if kind == "phi_0_1":
        out = _as_expansion(phi0, 0, 1, N)
        _check_q0(out, {1: 1, 0: 10, -1: 1}, kind)
        return out
    if kind == "E_4_1":
        a = mul_scalar(_as_expansion(phi0, 0, 1, N), eisenstein("E4", N))
        b = mul_scalar(_as_expansion(phi_m2, -2, 1, N), eisenstein("E6", N))
        out = (a - b) / 12
        _check_q0(out, {0: 1}, kind)
        if classify(out) is not HolomorphyClass.HOLOMORPHIC:
            raise ConstructionError("E_4_1 has singular terms")
        return out
    raise ValueError(f"unknown generator {kind!r}")


def weak_monomials(index_m: int, weight: int) -> list[tuple[int, int, int, int]]:
    """Exponents ``(a, b, c, d)`` of ``phi01^a phim21^b E4^c E6^d`` of the given index and weight."""
    out = []
    for b in range(index_m + 1):
        rest = weight + 2 * b
        if rest < 0:
            continue
        for c in range(rest // 4 + 1):
            if (rest - 4 * c) % 6 == 0:
                out.append((index_m - b, b, c, (rest - 4 * c) // 6))
    return out


def _monomial(exps, gens, N) -> JacobiExpansion:
    a, b, c, d = exps
    phi01, phim21 = gens
    parts = [phi01] * a + [phim21] * b
    form = parts[0]
    for p in parts[1:]:
        form = jacobi_product(form, p)
    scalar: QSeries = eisenstein("E4", N) ** c * eisenstein("E6", N) ** d if (c or d) else None
    if scalar is not None:
        form = mul_scalar(form, scalar)
    return form


def solve_weak_basis(index_m: int, weight: int, q0_target: Mapping[int, object], N: int) -> JacobiExpansion:
    """The unique combination of monomials in the generators with prescribed ``q^0`` layer.

    ``q0_target`` maps ``r >= 0`` to the common coefficient of ``zeta^r`` and
    ``zeta^-r``.
    """
    if index_m < 1:
        raise ValueError("index must be positive")
    monos = weak_monomials(index_m, weight)
    if not monos:
        raise NoSolutionError(f"no monomials of index {index_m} and weight {weight}")
    gens = (ez_generators("phi_0_1", N), ez_generators("phi_m2_1", N))
    forms = [_monomial(e, gens, N) for e in monos]
    rs = range(-index_m, index_m + 1)
    A = sympy.Matrix([[f.layer(0).get((r,), 0) for f in forms] for r in rs])
    rhs = sympy.Matrix([Fraction(q0_target.get(abs(r), 0)) for r in rs])
    try:
        sol, params = A.gauss_jordan_solve(rhs)
    except ValueError as exc:
        raise NoSolutionError(f"q^0 target {dict(q0_target)} is not attained") from exc
    if params.shape[0]:
        raise NonUniqueSolutionError(params.shape[0])
    coeffs = [Fraction(int(x.p), int(x.q)) for x in sol]
    out = None
    for x, f in zip(coeffs, forms):
        if x:
            term = f.scale(x)
            out = term if out is None else out + term
    if out is None:
        out = forms[0].scale(0)
    return out
