"""Concrete quasitriangular Hopf algebras: cyclic group algebras with their
Fourier R-matrix, finite group algebras, and Drinfeld doubles of groups."""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import permutations, product

import numpy as np

from .foundation import InputError
from .hopf_core import HopfAlgebra, make_algebra
from .quasitriangular import RMatrix, make_rmatrix


@dataclass(frozen=True)
class Group:
    table: tuple[tuple[int, ...], ...]  # table[a][b] = index of a·b
    inverses: tuple[int, ...]
    identity: int
    labels: tuple[str, ...]

    @property
    def order(self) -> int:
        return len(self.table)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]


def make_group(cayley, inverses=None, identity: int = 0, labels=None) -> Group:
    t = np.asarray(cayley, dtype=int)
    n = t.shape[0]
    if t.shape != (n, n) or t.min(initial=0) < 0 or t.max(initial=0) >= n:
        raise InputError("Cayley table must be n×n with entries in 0..n-1")
    if not (0 <= identity < n) or any(t[identity, a] != a or t[a, identity] != a for a in range(n)):
        raise InputError("identity index is wrong")
    # associativity
    if not np.array_equal(t[t], t[:, t]):
        raise InputError("table is not associative")
    if inverses is None:
        inverses = [int(np.nonzero(t[a] == identity)[0][0]) if (t[a] == identity).any() else -1 for a in range(n)]
    inverses = [int(i) for i in inverses]
    if len(inverses) != n or any(not (0 <= inverses[a] < n) or t[a, inverses[a]] != identity or t[inverses[a], a] != identity for a in range(n)):
        raise InputError("inverses are wrong")
    labels = tuple(labels) if labels is not None else tuple(f"g{a}" for a in range(n))
    return Group(tuple(map(tuple, t.tolist())), tuple(inverses), identity, labels)


def cyclic_group(n: int) -> Group:
    if n < 1:
        raise InputError("n must be positive")
    table = [[(a + b) % n for b in range(n)] for a in range(n)]
    return make_group(table, [(-a) % n for a in range(n)], 0, [f"g^{a}" for a in range(n)])


def symmetric_group(k: int) -> Group:
    perms = sorted(permutations(range(k)))
    index = {p: i for i, p in enumerate(perms)}
    # (p·q)(x) = p(q(x))
    table = [[index[tuple(p[q[x]] for x in range(k))] for q in perms] for p in perms]
    ident = index[tuple(range(k))]
    return make_group(table, None, ident, ["".join(map(str, p)) for p in perms])


def load_group_json(text: str) -> Group:
    """{"table": [[...]], "identity": 0, "inverses": [...], "labels": [...]} (last three optional)."""
    try:
        data = json.loads(text)
        return make_group(data["table"], data.get("inverses"), int(data.get("identity", 0)), data.get("labels"))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(f"malformed group JSON: {exc}") from exc


def group_algebra(cayley, inverses=None, identity: int = 0) -> HopfAlgebra:
    G = cayley if isinstance(cayley, Group) else make_group(cayley, inverses, identity)
    n = G.order
    m = np.zeros((n, n, n), complex)
    D = np.zeros((n, n, n), complex)
    S = np.zeros((n, n), complex)
    for a in range(n):
        D[a, a, a] = 1
        S[G.inverses[a], a] = 1
        for b in range(n):
            m[a, b, G.mul(a, b)] = 1
    return make_algebra(G.labels, m, D, np.ones(n), S, meta={"name": f"C[G], |G|={n}"})


def cyclic_group_algebra(n: int) -> tuple[HopfAlgebra, RMatrix]:
    """C[Z_n] with R = (1/n) Σ_{a,b=0}^{n-1} ω^{-ab} g^a ⊗ g^b, ω = e^{2πi/n}."""
    H = group_algebra(cyclic_group(n))
    a = np.arange(n)
    R = np.exp(-2j * np.pi * np.outer(a, a) / n) / n
    H.meta["name"] = f"C[Z_{n}]"
    return H, make_rmatrix(H, R)


def drinfeld_double(G: Group) -> tuple[HopfAlgebra, RMatrix]:
    """D(C[G]) on the basis δ_a ⊗ b, indexed a·|G| + b."""
    n = G.order
    e = G.identity
    inv = G.inverses
    d = n * n

    def ix(a: int, b: int) -> int:
        return a * n + b

    m = np.zeros((d, d, d), complex)
    D = np.zeros((d, d, d), complex)
    S = np.zeros((d, d), complex)
    eps = np.zeros(d, complex)
    for a, b in product(range(n), repeat=2):
        # (δ_a⊗b)(δ_c⊗d') = [a = b c b⁻¹] δ_a ⊗ b d'
        for c, dd in product(range(n), repeat=2):
            if a == G.mul(G.mul(b, c), inv[b]):
                m[ix(a, b), ix(c, dd), ix(a, G.mul(b, dd))] = 1
        for x in range(n):
            y = G.mul(inv[x], a)  # x y = a
            D[ix(a, b), ix(x, b), ix(y, b)] = 1
        S[ix(G.mul(G.mul(inv[b], inv[a]), b), inv[b]), ix(a, b)] = 1
        eps[ix(a, b)] = 1 if a == e else 0
    labels = [f"δ{G.labels[a]}⊗{G.labels[b]}" for a, b in product(range(n), repeat=2)]
    H = make_algebra(labels, m, D, eps, S, meta={"name": f"D(C[G]), |G|={n}"})
    # R = Σ_a (δ_a ⊗ e) ⊗ (1 ⊗ a), 1 = Σ_c δ_c
    R = np.zeros((d, d), complex)
    for a in range(n):
        for c in range(n):
            R[ix(a, e), ix(c, a)] = 1
    return H, make_rmatrix(H, R)
