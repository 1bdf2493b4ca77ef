"""Scalars, sparse tensors over a fixed basis, Sweedler expressions, and a guarded
tensor-network contractor shared by the invariant engines."""

from __future__ import annotations

import math
import os
import re
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Mapping, Sequence

import numpy as np
import opt_einsum

EPS_REL = 1e-9
EPS_ABS = 1e-12
PRUNE = 1e-13
DEFAULT_GUARD = 10**8


class InputError(ValueError):
    """Malformed or inconsistent input data."""


class GuardExceeded(RuntimeError):
    """An evaluation would need more elementary multiplications than allowed."""


def guard_limit() -> int:
    """Operation guard: HOPFKNOT_GUARD if set, else DEFAULT_GUARD."""
    raw = os.environ.get("HOPFKNOT_GUARD")
    if raw is None:
        return DEFAULT_GUARD
    try:
        value = int(float(raw))
    except ValueError as exc:
        raise InputError(f"HOPFKNOT_GUARD={raw!r} is not a number") from exc
    if value <= 0:
        raise InputError("HOPFKNOT_GUARD must be positive")
    return value


def close(a: complex, b: complex, rel: float = EPS_REL, abs_: float = EPS_ABS) -> bool:
    a, b = complex(a), complex(b)
    return abs(a - b) <= abs_ + rel * max(abs(a), abs(b))


def as_scalar(x: complex) -> complex:
    z = complex(x)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise InputError(f"non-finite scalar {z!r}")
    return z


# ---------------------------------------------------------------- sparse tensors


@dataclass(frozen=True)
class SparseTensor:
    """Element of H^{⊗arity} stored as index-tuple -> coefficient, sorted and pruned."""

    dim: int
    arity: int
    entries: tuple[tuple[tuple[int, ...], complex], ...] = ()

    @staticmethod
    def build(dim: int, arity: int, data: Mapping[tuple[int, ...], complex] | Iterable) -> SparseTensor:
        items = data.items() if isinstance(data, Mapping) else data
        acc: dict[tuple[int, ...], complex] = {}
        for key, val in items:
            key = tuple(int(k) for k in key)
            if len(key) != arity or any(k < 0 or k >= dim for k in key):
                raise InputError(f"index {key} invalid for dim={dim}, arity={arity}")
            acc[key] = acc.get(key, 0j) + as_scalar(val)
        kept = tuple((k, acc[k]) for k in sorted(acc) if abs(acc[k]) >= PRUNE)
        return SparseTensor(dim, arity, kept)

    @staticmethod
    def from_dense(arr: np.ndarray) -> SparseTensor:
        arr = np.asarray(arr, dtype=complex)
        dim = arr.shape[0] if arr.ndim else 1
        nz = np.argwhere(np.abs(arr) >= PRUNE)
        return SparseTensor.build(dim, arr.ndim, ((tuple(ix), arr[tuple(ix)]) for ix in nz))

    def to_dense(self) -> np.ndarray:
        out = np.zeros((self.dim,) * self.arity, dtype=complex)
        for key, val in self.entries:
            out[key] = val
        return out

    def as_dict(self) -> dict[tuple[int, ...], complex]:
        return dict(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def scale(self, c: complex) -> SparseTensor:
        return SparseTensor.build(self.dim, self.arity, ((k, c * v) for k, v in self.entries))

    def allclose(self, other: SparseTensor, rel: float = EPS_REL, abs_: float = EPS_ABS) -> bool:
        if (self.dim, self.arity) != (other.dim, other.arity):
            return False
        a, b = self.as_dict(), other.as_dict()
        return all(close(a.get(k, 0j), b.get(k, 0j), rel, abs_) for k in set(a) | set(b))


def tensor_add(a: SparseTensor, b: SparseTensor) -> SparseTensor:
    if (a.arity, a.dim) != (b.arity, b.dim):
        raise InputError(f"cannot add arity/dim {(a.arity, a.dim)} and {(b.arity, b.dim)}")
    return SparseTensor.build(a.dim, a.arity, list(a.entries) + list(b.entries))


def tensor_product(a: SparseTensor, b: SparseTensor) -> SparseTensor:
    if a.dim != b.dim:
        raise InputError(f"dim mismatch {a.dim} vs {b.dim}")
    data = ((ka + kb, va * vb) for ka, va in a.entries for kb, vb in b.entries)
    return SparseTensor.build(a.dim, a.arity + b.arity, data)


def contract(functional: Sequence[complex], t: SparseTensor, leg: int) -> SparseTensor:
    """Apply a covector to one leg of ``t``."""
    if not 0 <= leg < t.arity:
        raise InputError(f"leg {leg} out of range for arity {t.arity}")
    f = np.asarray(functional, dtype=complex)
    if f.shape != (t.dim,):
        raise InputError("functional length must equal dim")
    data = ((k[:leg] + k[leg + 1 :], f[k[leg]] * v) for k, v in t.entries)
    return SparseTensor.build(t.dim, t.arity - 1, data)


# ------------------------------------------------------------ Sweedler expressions

_SYMBOL_GLYPH = "Λ"


@dataclass(frozen=True)
class Atom:
    symbol: int  # which cointegral copy (lower circle)
    leg: int  # Sweedler subscript, 1-based
    power: int  # antipode exponent


@dataclass(frozen=True)
class SweedlerExpr:
    """Π over circles of λ(product of S^power(Λ^symbol_(leg))).

    ``idle`` counts cointegral copies with no legs at all; each contributes ε(Λ).
    """

    circles: tuple[tuple[Atom, ...], ...]
    idle: int = 0

    def symbols(self) -> list[int]:
        seen: list[int] = []
        for circ in self.circles:
            for at in circ:
                if at.symbol not in seen:
                    seen.append(at.symbol)
        return seen

    def legs(self, symbol: int) -> int:
        return sum(1 for c in self.circles for a in c if a.symbol == symbol)

    def validate(self) -> None:
        for s in self.symbols():
            got = sorted(a.leg for c in self.circles for a in c if a.symbol == s)
            if got != list(range(1, len(got) + 1)):
                raise InputError(f"symbol {s} uses legs {got}, expected 1..{len(got)}")

    def __str__(self) -> str:
        return format_expr(self)


def _atom_text(a: Atom) -> str:
    core = f"{_SYMBOL_GLYPH}{chr(39) * a.symbol}_({a.leg})"
    if a.power == 0:
        return core
    if a.power == 1:
        return f"S({core})"
    return f"S^{a.power}({core})"


def format_expr(e: SweedlerExpr) -> str:
    parts = ["λ(" + "".join(_atom_text(a) for a in circ) + ")" for circ in e.circles]
    parts += ["ε(Λ)"] * e.idle
    return "·".join(parts) if parts else "1"


def expr_canonicalize(e: SweedlerExpr) -> SweedlerExpr:
    e.validate()
    rename = {s: i for i, s in enumerate(e.symbols())}
    circles = tuple(tuple(Atom(rename[a.symbol], a.leg, a.power) for a in c) for c in e.circles)
    return SweedlerExpr(circles, e.idle)


_ATOM_RE = re.compile(
    r"(?:S(?:\^\{?(?P<pow>-?\d+)\}?)?\()?\s*(?:Λ|L)(?P<primes>'*)_\{?\((?P<leg>\d+)\)\}?\s*(?P<close>\))?"
)


def parse_expr(text: str) -> SweedlerExpr:
    """Parse the printed form, e.g. ``λ(S(Λ'_(3))Λ_(1))·λ(Λ_(2))``.

    ASCII ``L`` may stand for Λ and ``lambda`` for λ; ``\\cdot``/``*``/``·`` separate circles.
    """
    t = text.replace("lambda", "λ").replace("\\cdot", "·").replace("*", "·")
    t = t.replace("_{(", "_(").replace(")}", ")").replace(" ", "")
    circles: list[tuple[Atom, ...]] = []
    idle = t.count("ε(Λ)")
    t = t.replace("ε(Λ)", "")
    for chunk in filter(None, t.split("·")):
        if not (chunk.startswith("λ(") and chunk.endswith(")")):
            raise InputError(f"cannot parse circle {chunk!r}")
        body = chunk[2:-1]
        atoms: list[Atom] = []
        pos = 0
        while pos < len(body):
            m = _ATOM_RE.match(body, pos)
            if not m:
                raise InputError(f"cannot parse atom at {body[pos:]!r}")
            wrapped = m.group(0).startswith("S")
            power = int(m.group("pow")) if m.group("pow") else (1 if wrapped else 0)
            if wrapped != bool(m.group("close")):
                raise InputError(f"unbalanced antipode in {m.group(0)!r}")
            atoms.append(Atom(len(m.group("primes")), int(m.group("leg")), power))
            pos = m.end()
        circles.append(tuple(atoms))
    e = SweedlerExpr(tuple(circles), idle)
    e.validate()
    return e


# -------------------------------------------------------------- tensor networks


REFINE_ABOVE = 10**6  # plans cheaper than this are not worth a longer search


@dataclass
class Network:
    """Collects dense tensors with hashable bond labels for one closed contraction."""

    tensors: list[np.ndarray] = field(default_factory=list)
    labels: list[tuple[Hashable, ...]] = field(default_factory=list)

    def add(self, arr: np.ndarray, labels: Sequence[Hashable]) -> None:
        arr = np.asarray(arr)
        if arr.ndim != len(labels):
            raise InputError("label count does not match tensor rank")
        self.tensors.append(arr)
        self.labels.append(tuple(labels))

    def _equation(self, output: Sequence[Hashable]) -> str:
        sym: dict[Hashable, str] = {}
        for labs in self.labels:
            for lab in labs:
                if lab not in sym:
                    sym[lab] = opt_einsum.get_symbol(len(sym))
        ins = ",".join("".join(sym[l] for l in labs) for labs in self.labels)
        return ins + "->" + "".join(sym[l] for l in output)

    def cost(self, output: Sequence[Hashable] = ()) -> tuple[list, int]:
        """Greedy plan, refined by a randomized search only when it is expensive."""
        eq = self._equation(output)
        path, info = opt_einsum.contract_path(eq, *self.tensors, optimize="greedy")
        if info.opt_cost > REFINE_ABOVE:
            better, binfo = opt_einsum.contract_path(eq, *self.tensors, optimize="auto-hq")
            if binfo.opt_cost < info.opt_cost:
                path, info = better, binfo
        return path, int(info.opt_cost)

    def evaluate(self, output: Sequence[Hashable] = (), guard: int | None = None):
        """Contract everything; refuses plans above ``guard`` multiplications."""
        if not self.tensors:
            return np.array(1.0 + 0j)
        limit = guard_limit() if guard is None else guard
        path, flops = self.cost(output)
        if flops > limit:
            raise GuardExceeded(f"contraction needs ~{flops:.3g} multiplications, guard is {limit:.3g}")
        return opt_einsum.contract(self._equation(output), *self.tensors, optimize=path)
