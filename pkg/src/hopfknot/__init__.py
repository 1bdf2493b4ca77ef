"""Quantum invariants of closed 3-manifolds from finite-dimensional Hopf algebras.

Kuperberg's invariant is computed from combed Heegaard diagrams, Hennings'
invariant from framed surgery links, and the two are compared through the
chain-mail link of a Heegaard diagram.
"""

from .algebra_zoo import cyclic_group, cyclic_group_algebra, drinfeld_double, group_algebra, symmetric_group
from .foundation import GuardExceeded, InputError, SweedlerExpr, expr_canonicalize, format_expr, parse_expr
from .heegaard import (
    HeegaardDiagram,
    HeegaardError,
    canonical_combing,
    lens_space_heegaard,
    poincare_heegaard,
    s1xs2_heegaard,
    s3_heegaard,
)
from .hennings import chain_mail_fast_path, evaluate_TR, normalization, z_henn
from .hopf_core import HopfAlgebra, HopfError, fix_gauge, verify_hopf_axioms
from .kuperberg import z_kup, z_kup_symbolic
from .link_diagrams import FramedLinkDiagram, chain_mail, from_morse, lens_space_chain, linking_matrix, signature
from .quasitriangular import RMatrix, drinfeld_map, is_factorizable, ribbon_canonical


def gauged(H: HopfAlgebra, R: RMatrix) -> HopfAlgebra:
    """H with λ and Λ fixed by the Drinfeld map of R."""
    return fix_gauge(H, lambda p: drinfeld_map(H, R, p))


__all__ = [
    "FramedLinkDiagram",
    "GuardExceeded",
    "HeegaardDiagram",
    "HeegaardError",
    "HopfAlgebra",
    "HopfError",
    "InputError",
    "RMatrix",
    "SweedlerExpr",
    "canonical_combing",
    "chain_mail",
    "chain_mail_fast_path",
    "cyclic_group",
    "cyclic_group_algebra",
    "drinfeld_double",
    "drinfeld_map",
    "evaluate_TR",
    "expr_canonicalize",
    "fix_gauge",
    "format_expr",
    "from_morse",
    "gauged",
    "group_algebra",
    "is_factorizable",
    "lens_space_chain",
    "lens_space_heegaard",
    "linking_matrix",
    "normalization",
    "parse_expr",
    "poincare_heegaard",
    "ribbon_canonical",
    "s1xs2_heegaard",
    "s3_heegaard",
    "signature",
    "symmetric_group",
    "verify_hopf_axioms",
    "z_henn",
    "z_kup",
    "z_kup_symbolic",
]
