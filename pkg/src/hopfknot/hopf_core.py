"""Finite-dimensional Hopf algebras as dense structure constants.

Conventions (all arrays complex):
  mult[i, j, k]   coefficient of e_k in e_i e_j
  comult[i, j, k] coefficient of e_j ⊗ e_k in Δ(e_i)
  counit[i]       ε(e_i)
  antipode[j, i]  coefficient of e_j in S(e_i), so S(x) = antipode @ x
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from typing import Callable

import numpy as np

from .foundation import InputError, Network, SparseTensor, SweedlerExpr


class HopfError(ValueError):
    """A structural requirement (uniqueness, factorizability, ...) fails."""


@dataclass(frozen=True)
class Check:
    name: str
    deviation: float
    tol: float

    @property
    def ok(self) -> bool:
        return self.deviation <= self.tol


@dataclass(frozen=True)
class Report:
    checks: tuple[Check, ...]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    @property
    def max_deviation(self) -> float:
        return max((c.deviation for c in self.checks), default=0.0)

    def failed(self) -> list[str]:
        return [c.name for c in self.checks if not c.ok]

    def __str__(self) -> str:
        return "\n".join(f"{'ok  ' if c.ok else 'FAIL'} {c.name}: {c.deviation:.3e}" for c in self.checks)


@dataclass(frozen=True, eq=False)
class HopfAlgebra:
    basis: tuple[str, ...]
    mult: np.ndarray
    comult: np.ndarray
    counit: np.ndarray
    antipode: np.ndarray
    unit: np.ndarray
    antipode_inv: np.ndarray
    lam: np.ndarray | None = None
    Lam: np.ndarray | None = None
    meta: dict = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return len(self.basis)

    # elementwise helpers
    def mul(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return np.einsum("i,j,ijk->k", x, y, self.mult)

    def left_matrix(self, x: np.ndarray) -> np.ndarray:
        """Matrix of y -> x y."""
        return np.einsum("i,ijk->kj", x, self.mult)

    def right_matrix(self, x: np.ndarray) -> np.ndarray:
        """Matrix of y -> y x."""
        return np.einsum("j,ijk->ki", x, self.mult)

    def S(self, x: np.ndarray, power: int = 1) -> np.ndarray:
        return self.antipode_power(power) @ x

    def antipode_power(self, power: int) -> np.ndarray:
        base = self.antipode if power >= 0 else self.antipode_inv
        return np.linalg.matrix_power(base, abs(power))

    def inverse(self, x: np.ndarray) -> np.ndarray:
        L = self.left_matrix(x)
        sol, *_ = np.linalg.lstsq(L, self.unit, rcond=None)
        if np.abs(L @ sol - self.unit).max() > 1e-9 * max(1.0, np.abs(sol).max()):
            raise HopfError("element is not invertible")
        return sol

    def basis_vector(self, i: int) -> np.ndarray:
        v = np.zeros(self.dim, dtype=complex)
        v[i] = 1
        return v

    def element(self, x: np.ndarray) -> SparseTensor:
        return SparseTensor.from_dense(x)

    @property
    def gauged(self) -> bool:
        return self.lam is not None and self.Lam is not None

    def rescaled(self, c: float) -> HopfAlgebra:
        """λ -> cλ and Λ -> Λ/c (leaves every normalized invariant unchanged)."""
        if not self.gauged:
            raise HopfError("gauge not fixed")
        return replace(self, lam=c * self.lam, Lam=self.Lam / c)


# --------------------------------------------------------------------- building


def _solve_unit(mult: np.ndarray) -> np.ndarray:
    d = mult.shape[0]
    # u e_j = e_j and e_j u = e_j for all j
    A = np.concatenate([mult.transpose(1, 2, 0).reshape(d * d, d), mult.transpose(0, 2, 1).reshape(d * d, d)])
    b = np.concatenate([np.eye(d).reshape(-1), np.eye(d).reshape(-1)])
    u, *_ = np.linalg.lstsq(A, b, rcond=None)
    if np.abs(A @ u - b).max() > 1e-9:
        raise InputError("multiplication table has no two-sided unit")
    u[np.abs(u) < 1e-14] = 0
    return u


def make_algebra(
    basis: list[str] | tuple[str, ...],
    mult: np.ndarray,
    comult: np.ndarray,
    counit: np.ndarray,
    antipode: np.ndarray,
    meta: dict | None = None,
) -> HopfAlgebra:
    d = len(basis)
    mult = np.asarray(mult, dtype=complex)
    comult = np.asarray(comult, dtype=complex)
    counit = np.asarray(counit, dtype=complex)
    antipode = np.asarray(antipode, dtype=complex)
    for name, arr, shape in (
        ("mult", mult, (d, d, d)),
        ("comult", comult, (d, d, d)),
        ("counit", counit, (d,)),
        ("antipode", antipode, (d, d)),
    ):
        if arr.shape != shape:
            raise InputError(f"{name} has shape {arr.shape}, expected {shape}")
    try:
        s_inv = np.linalg.inv(antipode)
    except np.linalg.LinAlgError as exc:
        raise InputError("antipode is singular") from exc
    return HopfAlgebra(tuple(basis), mult, comult, counit, antipode, _solve_unit(mult), s_inv, meta=dict(meta or {}))


def load_json(text: str) -> tuple[HopfAlgebra, np.ndarray | None]:
    """Parse the JSON algebra format; returns the algebra and the optional R-matrix (d×d)."""
    try:
        data = json.loads(text)
        d = int(data["dim"])
        basis = data.get("basis") or [f"e{i}" for i in range(d)]
        if len(basis) != d:
            raise InputError("basis length differs from dim")
        mult = np.zeros((d, d, d), complex)
        comult = np.zeros((d, d, d), complex)
        counit = np.zeros(d, complex)
        antipode = np.zeros((d, d), complex)
        for i, j, k, re, im in data.get("mult", []):
            mult[i, j, k] += complex(re, im)
        for i, j, k, re, im in data.get("comult", []):
            comult[i, j, k] += complex(re, im)
        for i, re, im in data.get("counit", []):
            counit[i] += complex(re, im)
        for i, j, re, im in data.get("antipode", []):
            antipode[j, i] += complex(re, im)
        R = None
        if "r_matrix" in data:
            R = np.zeros((d, d), complex)
            for i, j, re, im in data["r_matrix"]:
                R[i, j] += complex(re, im)
    except InputError:
        raise
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise InputError(f"malformed algebra JSON: {exc}") from exc
    return make_algebra(basis, mult, comult, counit, antipode, meta={"source": "json"}), R


def dump_json(H: HopfAlgebra, R: np.ndarray | None = None) -> str:
    def nz(arr):
        return [tuple(int(v) for v in ix) for ix in np.argwhere(np.abs(arr) > 1e-15)]

    out = {
        "dim": H.dim,
        "basis": list(H.basis),
        "mult": [[*ix, H.mult[ix].real, H.mult[ix].imag] for ix in nz(H.mult)],
        "comult": [[*ix, H.comult[ix].real, H.comult[ix].imag] for ix in nz(H.comult)],
        "counit": [[i, H.counit[i].real, H.counit[i].imag] for (i,) in nz(H.counit)],
        "antipode": [[i, j, H.antipode[j, i].real, H.antipode[j, i].imag] for (j, i) in nz(H.antipode)],
    }
    if R is not None:
        out["r_matrix"] = [[i, j, R[i, j].real, R[i, j].imag] for (i, j) in nz(R)]
    return json.dumps(out)


# --------------------------------------------------------------------- axioms


def _dev(a: np.ndarray, b: np.ndarray) -> float:
    return float(np.abs(np.asarray(a) - np.asarray(b)).max(initial=0.0))


def _coproduct_products(D: np.ndarray, m: np.ndarray) -> np.ndarray:
    """Δ(e_i)Δ(e_j) for all i, j, exploiting sparsity of Δ."""
    d = D.shape[0]
    I, A, C = np.nonzero(D)
    V = D[I, A, C]
    out = np.zeros((d, d, d, d), complex)
    for i in range(d):
        sel = I == i
        a1, c1, v1 = A[sel], C[sel], V[sel]
        X = m[a1[:, None], A[None, :], :]
        Y = m[c1[:, None], C[None, :], :]
        W = v1[:, None] * V[None, :]
        contrib = np.einsum("pq,pqx,pqy->qxy", W, X, Y)
        np.add.at(out[i], I, contrib)
    return out


def verify_hopf_axioms(H: HopfAlgebra, tol: float = 1e-10) -> Report:
    m, D, eps, S, u = H.mult, H.comult, H.counit, H.antipode, H.unit
    d = H.dim
    eye = np.eye(d)
    checks = []
    # (xy)z = x(yz)
    lhs = np.einsum("ijk,klm->ijlm", m, m, optimize=True)
    rhs = np.einsum("jlk,ikm->ijlm", m, m, optimize=True)
    checks.append(Check("associativity", _dev(lhs, rhs), tol))
    checks.append(Check("unit", max(_dev(np.einsum("i,ijk->jk", u, m), eye), _dev(np.einsum("j,ijk->ik", u, m), eye)), tol))
    # (Δ⊗id)Δ = (id⊗Δ)Δ
    lhs = np.einsum("ijk,jab->iabk", D, D, optimize=True)
    rhs = np.einsum("iak,kbc->iabc", D, D, optimize=True)
    checks.append(Check("coassociativity", _dev(lhs, rhs), tol))
    checks.append(
        Check("counit", max(_dev(np.einsum("ijk,j->ik", D, eps), eye), _dev(np.einsum("ijk,k->ij", D, eps), eye)), tol)
    )
    # Δ(xy) = Δ(x)Δ(y)
    lhs = np.einsum("ijk,kab->ijab", m, D)
    checks.append(Check("comultiplication is multiplicative", _dev(lhs, _coproduct_products(D, m)), tol))
    checks.append(Check("counit is multiplicative", _dev(np.einsum("ijk,k->ij", m, eps), np.outer(eps, eps)), tol))
    checks.append(Check("Δ(1) = 1⊗1", _dev(np.einsum("i,ijk->jk", u, D), np.outer(u, u)), tol))
    checks.append(Check("ε(1) = 1", abs(eps @ u - 1), tol))
    # m(S⊗id)Δ = m(id⊗S)Δ = 1ε
    target = np.outer(eps, u)
    left = np.einsum("iab,ca,cbk->ik", D, S, m, optimize=True)
    right = np.einsum("iab,cb,ack->ik", D, S, m, optimize=True)
    checks.append(Check("antipode", max(_dev(left, target), _dev(right, target)), tol))
    checks.append(Check("antipode inverse", _dev(S @ H.antipode_inv, eye), tol))
    return Report(tuple(checks))


def iterated_coproduct(H: HopfAlgebra, x: np.ndarray, n: int) -> SparseTensor | complex:
    """Δ^{(n-1)}(x) as a dense-backed sparse tensor; n = 0 gives ε(x)."""
    x = np.asarray(x, dtype=complex)
    if n < 0:
        raise InputError("n must be non-negative")
    if n == 0:
        return complex(H.counit @ x)
    t = x
    for _ in range(n - 1):
        t = np.tensordot(t, H.comult, axes=([t.ndim - 1], [0]))
    return SparseTensor.from_dense(t)


def _null_vector(A: np.ndarray, what: str) -> np.ndarray:
    _, sv, vh = np.linalg.svd(A, full_matrices=False)
    d = A.shape[1]
    scale = max(sv.max(initial=0.0), 1.0)
    sv_full = np.concatenate([sv, np.zeros(d - len(sv))])
    null = int(np.sum(sv_full <= 1e-9 * scale))
    if null != 1:
        raise HopfError(f"no unique {what}: solution space has dimension {null}")
    v = vh[-1].conj()
    # deterministic representative: largest entry (first on ties) set to 1
    k = int(np.argmax(np.round(np.abs(v), 12)))
    v = v / v[k]
    v[np.abs(v) < 1e-14] = 0
    return v


def solve_integral(H: HopfAlgebra) -> np.ndarray:
    d = H.dim
    D, u = H.comult, H.unit
    eye = np.eye(d)
    # (id⊗λ)Δ(e_i) - λ_i 1 = 0  and  (λ⊗id)Δ(e_i) - λ_i 1 = 0, one row per (i, j)
    right = D - np.einsum("j,ik->ijk", u, eye)
    left = D.transpose(0, 2, 1) - np.einsum("j,ik->ijk", u, eye)
    A = np.concatenate([right.reshape(d * d, d), left.reshape(d * d, d)])
    return _null_vector(A, "integral")


def solve_cointegral(H: HopfAlgebra, two_sided: bool = True) -> np.ndarray:
    """Λ with xΛ = ε(x)Λ, and also Λx = ε(x)Λ unless ``two_sided`` is False."""
    d = H.dim
    m, eps = H.mult, H.counit
    eye = np.eye(d)
    # e_i Λ = ε(e_i) Λ and Λ e_i = ε(e_i) Λ
    left = m.transpose(0, 2, 1) - np.einsum("i,kj->ikj", eps, eye)
    right = m.transpose(1, 2, 0) - np.einsum("i,kj->ikj", eps, eye)
    blocks = [left.reshape(d * d, d)] + ([right.reshape(d * d, d)] if two_sided else [])
    return _null_vector(np.concatenate(blocks), "cointegral")


def is_semisimple(H: HopfAlgebra) -> bool:
    """Maschke: ε of a left cointegral is nonzero."""
    Lam = solve_cointegral(H, two_sided=False)
    return abs(H.counit @ Lam) > 1e-9 * H.dim


def fix_gauge(H: HopfAlgebra, drinfeld_map: Callable[[np.ndarray], np.ndarray]) -> HopfAlgebra:
    """Scale the raw integral/cointegral so that λ(Λ) = 1 and f(λ) = Λ with λ(1) > 0."""
    lam_raw = solve_integral(H)
    Lam_raw = solve_cointegral(H)
    image = np.asarray(drinfeld_map(lam_raw), dtype=complex)
    k = int(np.argmax(np.abs(Lam_raw)))
    mu = image[k] / Lam_raw[k]
    if abs(mu) < 1e-12 or np.abs(image - mu * Lam_raw).max() > 1e-9 * max(1.0, np.abs(image).max()):
        raise HopfError("Drinfeld map does not send the integral to a cointegral multiple; not factorizable")
    nu = lam_raw @ Lam_raw
    if abs(nu) < 1e-12:
        raise HopfError("λ(Λ) = 0 for the raw pair; algebra is not semisimple")
    c = 1 / np.sqrt(mu * nu)
    lam1 = c * (lam_raw @ H.unit)
    if abs(lam1.imag) > 1e-9 * abs(lam1):
        raise HopfError(f"λ(1) = {lam1} is not real in the factorizable gauge")
    if lam1.real < 0:
        c = -c
    lam = c * lam_raw
    Lam = c * mu * Lam_raw
    lam[np.abs(lam) < 1e-15] = 0
    Lam[np.abs(Lam) < 1e-15] = 0
    return replace(H, lam=lam, Lam=Lam)


def check_trace_properties(H: HopfAlgebra, tol: float = 1e-10) -> Report:
    if not H.gauged:
        raise HopfError("gauge not fixed")
    lam = H.lam
    m = H.mult
    xy = np.einsum("ijk,k->ij", m, lam)
    checks = [
        Check("λ(xy) = λ(yx)", _dev(xy, xy.T), tol),
        Check("λ(S(x)) = λ(x)", _dev(H.antipode.T @ lam, lam), tol),
        Check("λ(Λ) = 1", abs(lam @ H.Lam - 1), tol),
        Check("λ(S(Λ)) = 1", abs(lam @ (H.antipode @ H.Lam) - 1), tol),
    ]
    return Report(tuple(checks))


def sweedler_algebra() -> HopfAlgebra:
    """The 4-dimensional Sweedler algebra (not semisimple); basis 1, g, x, gx."""
    # g² = 1, x² = 0, xg = -gx, Δg = g⊗g, Δx = x⊗1 + g⊗x, S(g) = g, S(x) = -gx
    basis = ["1", "g", "x", "gx"]
    # represent a monomial g^a x^b as (a, b)
    idx = {(0, 0): 0, (1, 0): 1, (0, 1): 2, (1, 1): 3}
    mono = {v: k for k, v in idx.items()}
    d = 4
    m = np.zeros((d, d, d), complex)
    for i in range(d):
        for j in range(d):
            a1, b1 = mono[i]
            a2, b2 = mono[j]
            if b1 + b2 > 1:
                continue
            sign = -1 if (b1 and a2) else 1  # x g = -g x
            m[i, j, idx[((a1 + a2) % 2, b1 + b2)]] += sign
    D = np.zeros((d, d, d), complex)
    D[0, 0, 0] = 1
    D[1, 1, 1] = 1
    D[2, 2, 0] = 1
    D[2, 1, 2] = 1
    # Δ(gx) = Δg Δx = gx⊗g + 1⊗gx
    D[3, 3, 1] = 1
    D[3, 0, 3] = 1
    eps = np.array([1, 1, 0, 0], complex)
    S = np.zeros((d, d), complex)
    S[0, 0] = 1
    S[1, 1] = 1
    S[3, 2] = -1  # S(x) = -gx
    S[2, 3] = 1  # S(gx) = S(x)S(g) = -gx g = x
    return make_algebra(basis, m, D, eps, S, meta={"name": "Sweedler"})


def evaluate_expr(expr: SweedlerExpr, H: HopfAlgebra, guard: int | None = None) -> complex:
    """Numeric value of Π λ(Π S^a(Λ^c_(i))) with the gauged λ and Λ of ``H``.

    Each cointegral copy becomes a chain Λ → Δ → Δ …, each circle a chain of
    multiplications closed by λ; the whole network is contracted at once.
    """
    if not H.gauged:
        raise HopfError("gauge not fixed")
    expr.validate()
    net = Network()
    scalar = complex(H.counit @ H.Lam) ** expr.idle
    for sym in expr.symbols():
        n = expr.legs(sym)
        if n == 1:
            continue  # the lone leg is Λ itself, added where it is used
        net.add(H.Lam, [("c", sym, 0)])
        for k in range(1, n):
            last = ("leg", sym, n) if k == n - 1 else ("c", sym, k)
            net.add(H.comult, [("c", sym, k - 1), ("leg", sym, k), last])
    powers: dict[int, np.ndarray] = {}
    for ci, circ in enumerate(expr.circles):
        if not circ:
            scalar *= complex(H.lam @ H.unit)
            continue
        for j, at in enumerate(circ):
            site = ("site", ci, j)
            if at.power not in powers:
                powers[at.power] = H.antipode_power(at.power)
            if expr.legs(at.symbol) == 1:
                net.add(powers[at.power] @ H.Lam, [site])
            else:
                net.add(powers[at.power], [site, ("leg", at.symbol, at.leg)])
        acc = ("site", ci, 0)
        for j in range(1, len(circ)):
            out = ("acc", ci, j)
            net.add(H.mult, [acc, ("site", ci, j), out])
            acc = out
        net.add(H.lam, [acc])
    return scalar * complex(net.evaluate((), guard))
