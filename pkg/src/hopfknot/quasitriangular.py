"""R-matrices and the structure derived from them: Drinfeld element and map,
factorizability, the canonical ribbon element, and the anti-linear τ check."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .foundation import InputError, SparseTensor
from .hopf_core import Check, HopfAlgebra, HopfError, Report, _dev


@dataclass(frozen=True, eq=False)
class RMatrix:
    """R = Σ_ij value[i, j] e_i ⊗ e_j with its inverse in H⊗H."""

    value: np.ndarray
    inverse: np.ndarray

    def terms(self) -> tuple[np.ndarray, np.ndarray]:
        """Rank decomposition R = Σ_r s_r ⊗ t_r (rows of the two returned arrays).

        Uses s_r = basis vectors of the nonzero rows, so it is exact and deterministic.
        """
        rows = np.nonzero(np.abs(self.value).max(axis=1) > 0)[0]
        d = self.value.shape[0]
        s = np.eye(d, dtype=complex)[rows]
        t = self.value[rows]
        return s, t

    def as_tensor(self) -> SparseTensor:
        return SparseTensor.from_dense(self.value)


def hh_mult(H: HopfAlgebra, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Product in H⊗H of two elements given as d×d coefficient matrices."""
    out = np.zeros_like(B, dtype=complex)
    m = H.mult
    for i in np.nonzero(np.abs(A).max(axis=1) > 0)[0]:
        La = np.einsum("jg->gj", m[i])  # (e_i e_j)_g
        Lb = np.einsum("r,rkh->hk", A[i], m)  # (a_i e_k)_h with a_i = Σ_r A[i, r] e_r
        out += La @ B @ Lb.T
    return out


def make_rmatrix(H: HopfAlgebra, value: np.ndarray) -> RMatrix:
    value = np.asarray(value, dtype=complex)
    d = H.dim
    if value.shape != (d, d):
        raise InputError(f"R-matrix must be {d}×{d}")
    # left multiplication by R on H⊗H as a d²×d² matrix
    op = np.einsum("ir,ijg,rkh->ghjk", value, H.mult, H.mult, optimize=True).reshape(d * d, d * d)
    one = np.outer(H.unit, H.unit).reshape(-1)
    try:
        inv = np.linalg.solve(op, one).reshape(d, d)
    except np.linalg.LinAlgError as exc:
        raise HopfError("R-matrix is not invertible") from exc
    if _dev(hh_mult(H, value, inv), np.outer(H.unit, H.unit)) > 1e-9 or _dev(
        hh_mult(H, inv, value), np.outer(H.unit, H.unit)
    ) > 1e-9:
        raise HopfError("R-matrix is not invertible")
    inv[np.abs(inv) < 1e-15] = 0
    return RMatrix(value, inv)


def check_quasitriangular(H: HopfAlgebra, R: RMatrix, tol: float = 1e-10) -> Report:
    m, D = H.mult, H.comult
    s, t = R.terms()
    # products t_r t_q and s_r s_q
    tt = np.einsum("ra,qb,abc->rqc", t, t, m)
    ss = np.einsum("ra,qb,abc->rqc", s, s, m)
    delta_left = np.einsum("ij,iab->abj", R.value, D)  # (Δ⊗id)R
    r13r23 = np.einsum("ra,qb,rqc->abc", s, s, tt)
    delta_right = np.einsum("ij,jab->iab", R.value, D)  # (id⊗Δ)R
    r13r12 = np.einsum("rqa,qb,rc->abc", ss, t, t)
    checks = [
        Check("(Δ⊗id)R = R13 R23", _dev(delta_left, r13r23), tol),
        Check("(id⊗Δ)R = R13 R12", _dev(delta_right, r13r12), tol),
    ]
    worst = 0.0
    for i in range(H.dim):
        Dx = D[i]
        lhs = hh_mult(H, R.value, Dx)
        rhs = hh_mult(H, Dx.T, R.value)
        worst = max(worst, _dev(lhs, rhs))
    checks.append(Check("R Δ(x) = Δ^op(x) R", worst, tol))
    return Report(tuple(checks))


def r21r(H: HopfAlgebra, R: RMatrix) -> np.ndarray:
    """R21 R as a d×d coefficient matrix."""
    return hh_mult(H, R.value.T, R.value)


def drinfeld_element(H: HopfAlgebra, R: RMatrix) -> np.ndarray:
    """u = Σ S(t_k) s_k."""
    s, t = R.terms()
    St = t @ H.antipode.T
    u = np.einsum("ra,rb,abc->c", St, s, H.mult)
    H.inverse(u)  # raises if not invertible
    return u


def drinfeld_map(H: HopfAlgebra, R: RMatrix, p: np.ndarray, Q: np.ndarray | None = None) -> np.ndarray:
    """f(p) = Σ p(t'_j s_i) s'_j t_i = (p ⊗ id)(R21 R)."""
    if Q is None:
        Q = r21r(H, R)
    return np.asarray(p, dtype=complex) @ Q


def drinfeld_matrix(H: HopfAlgebra, R: RMatrix) -> np.ndarray:
    """Matrix of f on the dual basis: row i is f(e^i)."""
    return r21r(H, R)


def is_factorizable(H: HopfAlgebra, R: RMatrix) -> bool:
    sv = np.linalg.svd(drinfeld_matrix(H, R), compute_uv=False)
    return bool(sv.min() > 1e-9 * sv.max())


@dataclass(frozen=True, eq=False)
class RibbonData:
    u: np.ndarray
    theta: np.ndarray
    theta_inv: np.ndarray
    G: np.ndarray
    lambda_theta: complex
    lambda_theta_inv: complex
    report: Report


def ribbon_canonical(H: HopfAlgebra, R: RMatrix, tol: float = 1e-9) -> RibbonData:
    if not H.gauged:
        raise HopfError("gauge not fixed")
    u = drinfeld_element(H, R)
    theta = u
    theta_inv = H.inverse(theta)
    d = H.dim
    basis = np.eye(d)
    L, Rm = H.left_matrix(theta), H.right_matrix(theta)
    u_inv = H.inverse(u)
    s2 = H.antipode @ H.antipode
    conj = H.left_matrix(u) @ H.right_matrix(u_inv)
    delta_theta = np.einsum("i,ijk->jk", theta, H.comult)
    lhs = hh_mult(H, r21r(H, R), delta_theta)
    checks = [
        Check("u central", _dev(L @ basis, Rm @ basis), tol),
        Check("S²(x) = u x u⁻¹", _dev(s2, conj), tol),
        Check("ε(θ) = 1", abs(H.counit @ theta - 1), tol),
        Check("S(θ) = θ", _dev(H.antipode @ theta, theta), tol),
        Check("R21R Δ(θ) = θ⊗θ", _dev(lhs, np.outer(theta, theta)), tol),
    ]
    lt, lti = complex(H.lam @ theta), complex(H.lam @ theta_inv)
    # equals 1 in the fixed gauge and c² after λ -> cλ; only vanishing is fatal
    checks.append(Check("λ(θ)λ(θ⁻¹) ≠ 0", 0.0 if abs(lt * lti) > tol else 1.0, 0.0))
    rep = Report(tuple(checks))
    if not rep.ok:
        raise HopfError("ribbon invariants fail: " + ", ".join(rep.failed()))
    return RibbonData(u, theta, theta_inv, H.unit.copy(), lt, lti, rep)


def check_tau(H: HopfAlgebra, R: RMatrix, tau: np.ndarray, tol: float = 1e-9) -> bool:
    """τ(Σ c_i e_i) = Σ conj(c_i) τ(e_i), with ``tau[:, i]`` = τ(e_i)."""
    tau = np.asarray(tau, dtype=complex)
    # algebra automorphism: τ(e_i e_j) = τ(e_i) τ(e_j)
    lhs = np.einsum("ijk,ak->ija", H.mult.conj(), tau)
    rhs = np.einsum("ai,bj,abc->ijc", tau, tau, H.mult)
    if _dev(lhs, rhs) > tol or abs(np.linalg.det(tau)) < 1e-12:
        raise HopfError("τ is not an algebra automorphism")
    image = tau @ R.value.conj() @ tau.T
    return _dev(image, R.inverse.T) <= tol
