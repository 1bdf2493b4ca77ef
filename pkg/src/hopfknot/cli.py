"""Command-line front end.

Exit codes: 0 success, 1 a check or verification failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import heegaard as hg
from . import link_diagrams as ld
from .algebra_zoo import cyclic_group, cyclic_group_algebra, drinfeld_double, load_group_json
from .foundation import EPS_ABS, EPS_REL, GuardExceeded, InputError, close, format_expr, guard_limit
from .hennings import chain_mail_fast_path, z_henn
from .hopf_core import HopfAlgebra, HopfError, check_trace_properties, fix_gauge, is_semisimple, verify_hopf_axioms
from .hopf_core import load_json as load_algebra_json
from .kuperberg import z_kup, z_kup_symbolic
from .quasitriangular import RMatrix, check_quasitriangular, check_tau, drinfeld_map, is_factorizable, make_rmatrix
from .quasitriangular import ribbon_canonical


class CheckFailed(RuntimeError):
    """A verification did not pass."""


@dataclass
class AlgebraSpec:
    text: str
    H: HopfAlgebra
    R: RMatrix


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def _int(text: str, what: str) -> int:
    try:
        return int(text)
    except ValueError as exc:
        raise InputError(f"{what} must be an integer, got {text!r}") from exc


def parse_algebra(spec: str) -> AlgebraSpec:
    kind, _, arg = spec.partition(":")
    if kind == "cyclic":
        n = _int(arg, "n")
        if n < 1:
            raise InputError("n must be positive")
        H, R = cyclic_group_algebra(n)
    elif kind == "double-cyclic":
        n = _int(arg, "n")
        if n < 1:
            raise InputError("n must be positive")
        H, R = drinfeld_double(cyclic_group(n))
    elif kind == "double-group":
        H, R = drinfeld_double(load_group_json(_read(arg)))
    elif kind == "json":
        H, value = load_algebra_json(_read(arg))
        if value is None:
            raise InputError("algebra JSON has no r_matrix")
        R = make_rmatrix(H, value)
    else:
        raise InputError(f"unknown algebra spec {spec!r}")
    return AlgebraSpec(spec, H, R)


def gauged(A: AlgebraSpec) -> HopfAlgebra:
    return fix_gauge(A.H, lambda p: drinfeld_map(A.H, A.R, p))


def parse_heegaard(spec: str) -> hg.HeegaardDiagram | None:
    """Heegaard diagram for the spec, or None for a link spec."""
    kind, _, arg = spec.partition(":")
    if spec == "s3":
        return hg.s3_heegaard()
    if spec == "s1xs2":
        return hg.s1xs2_heegaard()
    if spec == "poincare":
        return hg.poincare_heegaard()
    if kind == "lens":
        p, _, q = arg.partition(":")
        return hg.lens_space_heegaard(_int(p, "p"), _int(q, "q"))
    if kind == "heegaard":
        return hg.load_json(_read(arg))
    if kind == "link":
        return None
    raise InputError(f"unknown manifold spec {spec!r}")


def _num(z: complex) -> list[float]:
    return [round(float(z.real), 12) + 0.0, round(float(z.imag), 12) + 0.0]


def _text(z: complex) -> str:
    re_, im = _num(z)
    return f"{re_:.12f} {'-' if im < 0 else '+'} {abs(im):.12f}i"


# ------------------------------------------------------------------ commands


def cmd_algebra_check(args) -> int:
    A = parse_algebra(args.spec)
    reports = [("Hopf axioms", verify_hopf_axioms(A.H)), ("quasitriangular", check_quasitriangular(A.H, A.R))]
    for name, rep in reports:
        status = "ok" if rep.ok else "FAILED: " + ", ".join(rep.failed())
        print(f"{name}: {status}")
    semi = is_semisimple(A.H)
    fact = is_factorizable(A.H, A.R)
    print(f"semisimple: {str(semi).lower()}")
    print(f"factorizable: {str(fact).lower()}")
    if not all(rep.ok for _, rep in reports) or not semi:
        return 1
    try:
        H = gauged(A)
    except HopfError as exc:
        print(f"gauge fixing: FAILED: {exc}")
        return 1
    trace = check_trace_properties(H)
    print(f"trace properties: {'ok' if trace.ok else 'FAILED: ' + ', '.join(trace.failed())}")
    rib = ribbon_canonical(H, A.R)
    print(f"λ(1) = {_text(complex(H.lam @ H.unit))}")
    print(f"λ(θ) = {_text(rib.lambda_theta)}")
    print(f"λ(θ⁻¹) = {_text(rib.lambda_theta_inv)}")
    return 0 if trace.ok else 1


def cmd_invariant(args) -> int:
    A = parse_algebra(args.algebra)
    D = parse_heegaard(args.manifold)
    H = gauged(A)
    expr = None
    if args.kind == "kuperberg":
        if D is None:
            raise InputError("kuperberg needs a Heegaard spec, not a link")
        value = z_kup(D, H)
        expr = z_kup_symbolic(D) if args.symbolic else None
    else:
        if D is None:
            if args.symbolic:
                raise InputError("--symbolic needs a Heegaard spec")
            L = ld.load_json(_read(args.manifold.partition(":")[2]))
        else:
            L = ld.chain_mail(D).link
            expr = chain_mail_fast_path(D, H, A.R).expr if args.symbolic else None
        value = z_henn(L, H, A.R)
    if args.json:
        out = {"algebra": args.algebra, "manifold": args.manifold, "kind": args.kind, "value": _num(value)}
        if expr is not None:
            out["expr"] = format_expr(expr)
        print(json.dumps(out, sort_keys=True, ensure_ascii=False))
    else:
        print(_text(value))
        if expr is not None:
            print(format_expr(expr))
    return 0


def cmd_verify_theorem(args) -> int:
    A = parse_algebra(args.algebra)
    D = parse_heegaard(args.manifold)
    if D is None:
        raise InputError("the theorem check needs a Heegaard spec")
    H = gauged(A)
    values = {"kuperberg": z_kup(D, H), "hennings fast path": chain_mail_fast_path(D, H, A.R).value}
    cm = ld.chain_mail(D)
    if not cm.faithful:
        print("generic Hennings: skipped (diagram data is not realizable on a surface)")
    else:
        try:
            values["hennings generic"] = z_henn(cm.link, H, A.R)
        except GuardExceeded as exc:
            print(f"generic Hennings: skipped ({exc})")
    for name, z in values.items():
        print(f"{name}: {_text(z)}")
    ref = values["kuperberg"]
    worst = max(abs(z - ref) for z in values.values())
    print(f"max |difference| = {worst:.3e}")
    if not all(close(z, ref, EPS_REL, EPS_ABS) for z in values.values()):
        raise CheckFailed("values disagree")
    return 0


def cmd_verify_corollary(args) -> int:
    A = parse_algebra(args.algebra)
    kind, _, arg = args.manifold.partition(":")
    if kind != "lens":
        raise InputError("the corollary check needs lens:p:q (Heegaard diagram and surgery chain)")
    p, _, q = arg.partition(":")
    p, q = _int(p, "p"), _int(q, "q")
    D = hg.lens_space_heegaard(p, q)
    if p < 2:
        raise InputError("the corollary check needs p >= 2")
    if not is_factorizable(A.H, A.R):
        raise CheckFailed(f"{args.algebra} is not factorizable")
    # τ = coefficient conjugation in the given basis
    if not check_tau(A.H, A.R, np.eye(A.H.dim)):
        raise CheckFailed("coefficient conjugation does not send R to R₂₁⁻¹")
    H = gauged(A)
    kup = z_kup(D, H)
    henn = z_henn(ld.lens_space_chain(p, q), H, A.R)
    print(f"Z_Kup = {_text(kup)}")
    print(f"Z_Henn(M) = {_text(henn)}")
    print(f"|Z_Henn(M)|² = {abs(henn) ** 2:.12f}")
    if not close(kup, abs(henn) ** 2, EPS_REL, EPS_ABS):
        raise CheckFailed("Z_Kup differs from |Z_Henn|²")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hopfknot", description="3-manifold invariants from finite-dimensional Hopf algebras")
    sub = ap.add_subparsers(dest="command", required=True)
    alg = sub.add_parser("algebra", help="algebra diagnostics")
    alg_sub = alg.add_subparsers(dest="action", required=True)
    check = alg_sub.add_parser("check", help="run every structural check")
    check.add_argument("spec")
    check.set_defaults(func=cmd_algebra_check)
    inv = sub.add_parser("invariant", help="evaluate an invariant")
    inv.add_argument("kind", choices=["hennings", "kuperberg"])
    inv.add_argument("--manifold", required=True)
    inv.add_argument("--algebra", required=True)
    inv.add_argument("--symbolic", action="store_true", help="also print the cointegral expression")
    inv.add_argument("--json", action="store_true")
    inv.set_defaults(func=cmd_invariant)
    ver = sub.add_parser("verify", help="check an identity numerically")
    ver.add_argument("what", choices=["theorem", "corollary"])
    ver.add_argument("--manifold", required=True)
    ver.add_argument("--algebra", required=True)
    ver.set_defaults(func=lambda a: cmd_verify_theorem(a) if a.what == "theorem" else cmd_verify_corollary(a))
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        guard_limit()
        return args.func(args)
    except (InputError, hg.HeegaardError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (CheckFailed, HopfError, GuardExceeded) as exc:
        print(f"failed: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
