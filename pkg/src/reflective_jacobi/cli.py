"""Command-line front end.

Exit codes: 0 success, 1 domain error, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

import sympy

from . import dd, reflective
from .forms import FormSyntaxError, build_form, describe, parse_form, parse_lattice
from .jacobi import classify, gritsenko_residual, write_dump
from .lattice import (
    TWO_REFLECTIVE,
    count_C_gamma,
    count_R_mu,
    count_roots,
    det_and_level,
    prime_level,
    reflective_classes,
)


class UsageError(Exception):
    pass


@dataclass
class Report:
    command: str
    inputs: dict
    results: dict = field(default_factory=dict)
    citations: list = field(default_factory=list)

    def tree(self) -> dict:
        return {"command": self.command, "inputs": self.inputs, "results": self.results,
                "citations": self.citations}


def _exact(x: Any) -> Any:
    """Fractions become ``"num/den"`` strings (integers stay bare)."""
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, dict):
        return {str(k): _exact(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_exact(v) for v in x]
    return str(x)


def render_json(report: Report) -> str:
    return json.dumps(_exact(report.tree()), indent=2, ensure_ascii=False) + "\n"


def _text_lines(obj: Any, indent: int) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.extend(_text_lines(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_scalar_text(v)}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, dict):
                sub = _text_lines(v, indent + 1)
                lines.append(f"{pad}- " + sub[0].lstrip())
                lines.extend(sub[1:])
            else:
                lines.append(f"{pad}- {_scalar_text(v)}")
    else:
        lines.append(f"{pad}{_scalar_text(obj)}")
    return lines


def _scalar_text(v: Any) -> str:
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, (list, dict)):
        return "[]" if isinstance(v, list) else "{}"
    return str(v)


def render_text(report: Report) -> str:
    tree = _exact(report.tree())
    lines = [f"== {tree['command']} =="]
    lines += _text_lines({"inputs": tree["inputs"], "results": tree["results"]}, 0)
    if tree["citations"]:
        lines.append("citations: " + "; ".join(tree["citations"]))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# commands


def _kind(args) -> reflective.DivisorKind:
    if args.kind == "two-reflective":
        if args.p is not None:
            raise UsageError("--p only applies to --kind prime-level")
        return TWO_REFLECTIVE
    if args.p is None:
        raise UsageError("--kind prime-level needs --p")
    try:
        return prime_level(args.p)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def cmd_lattice(args) -> Report:
    try:
        L = parse_lattice(args.family)
    except FormSyntaxError as exc:
        raise UsageError(str(exc)) from exc
    if args.m != 1:
        L = L.scaled(args.m)
    det, level = det_and_level(L)
    res = {"rank": L.rank, "det": det, "level": level, "roots": count_roots(L)}
    classes = []
    for c in reflective_classes(L, TWO_REFLECTIVE):
        classes.append({"representative": str(c.representative), "order": c.order, "norm": c.norm_mod_2,
                        "R_mu": count_R_mu(L, c.representative)})
    res["two_reflective_classes"] = classes
    if sympy.isprime(level):
        p = level
        res[f"level_{p}_classes"] = [
            {"representative": str(c.representative), "norm": c.norm_mod_2, "C_gamma": count_C_gamma(L, c, p)}
            for c in reflective_classes(L, prime_level(p))
        ]
    return Report("lattice", {"family": args.family, "m": args.m}, res)


def cmd_identity(args) -> Report:
    try:
        spec = parse_form(args.form)
    except FormSyntaxError as exc:
        raise UsageError(str(exc)) from exc
    if args.trunc < 1:
        raise ValueError("truncation too small for divisor extraction (need --trunc >= 1)")
    phi = build_form(spec, args.trunc)
    res: dict = {
        "index_rank": phi.rank,
        "weight": phi.weight,
        "window": [-phi.pole_order, phi.trunc],
        "terms": len(phi),
        "class": classify(phi).value,
    }
    if args.dump:
        write_dump(phi, args.dump)
        res["dump"] = args.dump
    if phi.weight == 0 and phi.rank > 0:
        res["residual"] = gritsenko_residual(phi)
        kind = _kind(args)
        D = reflective.derive_divisor(phi, kind)
        res["beta0"] = D.beta0
        res["beta"] = [{"class": str(c.representative), "multiplicity": b} for c, b in D.beta_map.items()]
        if kind.p is None:
            k = reflective.weight_two_reflective(phi.index, D)
        else:
            k = reflective.weight_prime_level(phi.index, kind.p, D)
        c00 = phi.constant_term()
        res["weight_from_formula"] = k
        res["weight_from_constant_term"] = c00 / 2
        res["readings_agree"] = k == c00 / 2
    return Report("identity", {"form": describe(spec), "trunc": args.trunc},
                  res, ["constant-term identity", "weight formula"])


def cmd_classify(args) -> Report:
    kind = _kind(args)
    rows = [
        {"rank": r.rank, "status": r.status, "detail": r.detail,
         "provenance": "derived" if r.derived else "documented, not derived", "source": r.source}
        for r in reflective.rank_classification(kind)
    ]
    res: dict = {"summary": reflective.admissible_summary(kind), "rows": rows}
    if kind.p is not None:
        res["riemann_roch_bound"] = reflective.riemann_roch_rank_bound(kind.p)
    a = kind.chain_parameter
    special = [n0 for n0 in range(9, 24) if reflective.solve_g_vanishing(n0, a) is not None]
    res["c2_equals_1_at"] = special
    res["d_over_beta0"] = {str(n0): reflective.solve_g_vanishing(n0, a) for n0 in special}
    return Report("classify", {"kind": str(kind)}, res,
                  ["weight-6 chain", "weight-4 chain", "complete 2-divisor chain", "Riemann-Roch bound"])


def cmd_tn(args) -> Report:
    rows = []
    for n in args.n:
        if n < 1:
            raise UsageError("--n values must be positive")
        r = reflective.check_Tn(n)
        rows.append({"n": n, "roots": r.roots, "R_mu": list(r.class_counts),
                     "formula_weight_per_beta0": r.formula_weight_per_beta0,
                     "required_weight_per_beta0": r.required_weight_per_beta0,
                     "beta_mu_over_beta0": r.beta_ratio, "obstructed": r.obstructed})
    return Report("tn", {"n": list(args.n)}, {"lattices": rows}, ["weight formula", "rank-17 weight"])


def _cand(c: dd.DdCandidate) -> dict:
    out = {"family": c.family, "n": c.n, "m": c.m, "c": c.c, "k": c.k, "admissible": c.admissible,
           "reason": c.exclusion_reason}
    if c.convention:
        out["convention"] = c.convention
    return out


def cmd_dd(args) -> Report:
    res: dict = {}
    if args.family in ("nA1", "all"):
        cands = dd.enumerate_nA1(args.c_max)
        res["nA1_admissible"] = [{"m": c.m, "n": c.n, "k": c.k} for c in cands if c.admissible]
        res["nA1_rejected_near_frontier"] = [_cand(c) for c in cands if not c.admissible and c.k > 0]
        ex = dd.exclude_m5()
        res["m5_exclusion"] = {"q0": {f"zeta^{r}": v for r, v in ex.q0.items()}, "q1_zeta5": ex.q1_zeta5,
                               "negative_singular": [list(t) for t in ex.negative_singular], "verdict": ex.reason}
    if args.family in ("AnDn", "all"):
        cands = dd.enumerate_AnDn()
        res["AnDn_pairs"] = [f"{f}{n},{m}" for f, n, m in dd.admissible_pairs(cands)]
        res["AnDn_admissible"] = [_cand(c) for c in cands if c.admissible]
        res["search_bounds"] = {"max_n": dd.ANDN_MAX_N, "max_m": dd.ANDN_MAX_M}
    return Report("dd", {"family": args.family, "c_max": args.c_max}, res,
                  ["constant-term identity", "singular-weight floor", "index-5 weak form"])


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="reflective-jacobi", description=__doc__.splitlines()[0])
    p.add_argument("--format", choices=("text", "json"), default="text")
    # also accepted after the subcommand; SUPPRESS keeps the top-level value otherwise
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("lattice", parents=[common], help="lattice invariants, roots and reflective classes")
    s.add_argument("--family", required=True, help="e.g. E8, 2E8+A1, A2, D4, <4>")
    s.add_argument("--m", type=int, default=1, help="rescale the whole lattice by m")
    s.set_defaults(func=cmd_lattice)

    s = sub.add_parser("identity", parents=[common], help="constant-term identity and weight readings of a form")
    s.add_argument("--form", required=True, help='e.g. "E41 x thetaE8 x thetaE8 / Delta"')
    s.add_argument("--trunc", type=int, default=2, help="keep q-exponents below this (default 2)")
    s.add_argument("--kind", choices=("two-reflective", "prime-level"), default="two-reflective")
    s.add_argument("--p", type=int)
    s.add_argument("--dump", metavar="PATH", help="write the expansion in text form")
    s.set_defaults(func=cmd_identity)

    s = sub.add_parser("classify", parents=[common], help="admissible ranks from the operator chains")
    s.add_argument("--kind", choices=("two-reflective", "prime-level"), required=True)
    s.add_argument("--p", type=int)
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("tn", parents=[common], help="weight check on 2E8 + <2n>")
    s.add_argument("--n", type=int, nargs="+", required=True)
    s.set_defaults(func=cmd_tn)

    s = sub.add_parser("dd", parents=[common], help="diagonal-divisor weights and admissible pairs")
    s.add_argument("--family", choices=("nA1", "AnDn", "all"), default="all")
    s.add_argument("--c-max", type=int, default=5)
    s.set_defaults(func=cmd_dd)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)  # exits with 2 on usage errors
    try:
        report = args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    out = render_json(report) if args.format == "json" else render_text(report)
    sys.stdout.write(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
