"""Kuperberg's invariant of a combed Heegaard diagram (involutory case)."""

from __future__ import annotations

from .foundation import Atom, SweedlerExpr, expr_canonicalize
from .heegaard import HeegaardDiagram, ensure_valid, psi_powers
from .hopf_core import HopfAlgebra, evaluate_expr


def heegaard_expression(D: HeegaardDiagram, powers: dict[int, int]) -> SweedlerExpr:
    """One cointegral per lower circle, split along it; each upper circle reads its
    labels from the base point, first label leftmost, under λ."""
    lower = D.lower_of()
    circles = []
    for k in range(D.genus):
        circles.append(tuple(Atom(lower[c][0], lower[c][1], powers[c]) for c in D.upper_crossings(k)))
    idle = sum(1 for circ in D.lower if not circ)
    return SweedlerExpr(tuple(circles), idle)


def z_kup_symbolic(D: HeegaardDiagram) -> SweedlerExpr:
    ensure_valid(D)
    return expr_canonicalize(heegaard_expression(D, psi_powers(D)))


def z_kup(D: HeegaardDiagram, H: HopfAlgebra, guard: int | None = None) -> complex:
    ensure_valid(D)
    return evaluate_expr(heegaard_expression(D, psi_powers(D)), H, guard)
