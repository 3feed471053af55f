"""Parsing of lattice names and of the small form-expression language.

Lattice names: summands joined by ``+``, each ``[k]A<n>``, ``[k]D<n>``,
``[k]E8`` or ``[k]<2n>``, optionally followed by ``(m)`` to rescale.
Forms: factors joined by ``x`` (orthogonal tensor), atoms inside a factor
joined by ``*``, and any number of trailing ``/Delta``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .eichler_zagier import ez_generators
from .jacobi import JacobiExpansion, constant_one, jacobi_product, mul_scalar, tensor, theta_series
from .lattice import IntegerLattice, build_named, direct_sum
from .qseries import QSeries, delta, eisenstein

_SUMMAND = re.compile(r"^(\d*)(?:(A|D)(\d+)|(E8)|<(\d+)>)(?:\((\d+)\))?$")
_ATOM = re.compile(r"E41|E4|E6|G2|Delta|phi01|phim21|thetaE8|thetaL\(.+\)")

SCALARS = {"E4", "E6", "G2", "Delta"}
JACOBI = {"phi01": "phi_0_1", "phim21": "phi_m2_1", "E41": "E_4_1"}


class FormSyntaxError(ValueError):
    pass


def parse_lattice(name: str) -> IntegerLattice:
    parts = []
    for raw in name.replace(" ", "").split("+"):
        m = _SUMMAND.match(raw)
        if not m:
            raise FormSyntaxError(f"cannot parse lattice summand {raw!r}")
        copies = int(m.group(1) or 1)
        scale = int(m.group(6) or 1)
        if m.group(2):
            family, n = m.group(2), int(m.group(3))
            if family == "A" and n == 1:
                L = build_named("A1scaled", 1, scale)
            else:
                L = build_named(family, n, scale)
        elif m.group(4):
            L = build_named("E8", 1, scale)
        else:
            two_n = int(m.group(5))
            if two_n % 2:
                raise FormSyntaxError(f"<{two_n}> is not even")
            L = build_named("rank1", two_n // 2, scale)
        if copies < 1:
            raise FormSyntaxError("number of copies must be positive")
        parts.extend([L] * copies)
    out = direct_sum(*parts)
    return IntegerLattice(out.gram, label=name)


@dataclass(frozen=True)
class FormSpec:
    factors: tuple  # tuple of tuples of atom strings
    delta_divisions: int


def parse_form(text: str) -> FormSpec:
    s = re.sub(r"\s+", "", text)
    if not s:
        raise FormSyntaxError("empty form")
    divisions = 0
    while s.endswith("/Delta"):
        s = s[: -len("/Delta")]
        divisions += 1
    if "/" in s:
        raise FormSyntaxError("division is only allowed as trailing /Delta")
    factors = []
    for factor in _split_tensor(s):
        atoms = factor.split("*")
        for a in atoms:
            if not _ATOM.fullmatch(a):
                raise FormSyntaxError(f"unknown atom {a!r}")
        factors.append(tuple(atoms))
    return FormSpec(tuple(factors), divisions)


def _split_tensor(s: str) -> list[str]:
    out, depth, cur = [], 0, ""
    for ch in s:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "x" and depth == 0:
            out.append(cur)
            cur = ""
        else:
            cur += ch
    out.append(cur)
    if any(not f for f in out):
        raise FormSyntaxError("empty tensor factor")
    return out


def _scalar(atom: str, T: int) -> QSeries:
    if atom == "Delta":
        return delta(T)
    return eisenstein(atom, T)


def _jacobi_atom(atom: str, T: int) -> JacobiExpansion:
    if atom in JACOBI:
        return ez_generators(JACOBI[atom], T)
    if atom == "thetaE8":
        return theta_series(build_named("E8"), T)
    return theta_series(parse_lattice(atom[len("thetaL("):-1]), T)


def build_form(spec: FormSpec | str, N: int) -> JacobiExpansion:
    """Expansion of the form, known below ``q^N``.

    Scalar factors and the ``1/Delta`` divisions are applied to the first
    tensor factor before tensoring; the result is the same and the work is
    far smaller.
    """
    if isinstance(spec, str):
        spec = parse_form(spec)
    if N < 1:
        raise ValueError("N must be at least 1")
    T = N + spec.delta_divisions
    built = []
    for atoms in spec.factors:
        scalar: QSeries | None = None
        jac: JacobiExpansion | None = None
        for a in atoms:
            if a in SCALARS:
                f = _scalar(a, T)
                scalar = f if scalar is None else scalar * f
            else:
                g = _jacobi_atom(a, T)
                jac = g if jac is None else jacobi_product(jac, g)
        if jac is None:
            jac = constant_one(T)
        built.append((jac, scalar))
    first, scalar0 = built[0]
    for _ in range(spec.delta_divisions):
        inv = delta(T, inverse=True)
        scalar0 = inv if scalar0 is None else scalar0 * inv
    out = first if scalar0 is None else mul_scalar(first, scalar0)
    for jac, scalar in built[1:]:
        if scalar is not None:
            jac = mul_scalar(jac, scalar)
        out = tensor(out, jac)
    return out.truncate(N) if out.trunc > N else out


def describe(spec: FormSpec) -> str:
    body = " x ".join("*".join(f) for f in spec.factors)
    return body + " / Delta" * spec.delta_divisions


__all__ = ["FormSpec", "FormSyntaxError", "build_form", "describe", "parse_form", "parse_lattice"]
