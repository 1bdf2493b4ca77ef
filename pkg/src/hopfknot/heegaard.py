"""Combed Heegaard diagrams in standard position.

Lower circles are horizontal lines oriented left to right and listed by their
crossings from the base point. Upper circles are listed as event sequences from
their base points: crossings interleaved with extremum passages. Every crossing
carries exact rotation numbers (ψ_l, ψ_u) in full turns and the direction (+1
upward, -1 downward) in which the upper circle passes the lower one.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from fractions import Fraction
from math import gcd

from .foundation import InputError
from .hopf_core import Check, Report

CCW, CW = "ccw", "cw"


class HeegaardError(ValueError):
    """Diagram data violates a structural or combing invariant."""


@dataclass(frozen=True)
class Event:
    kind: str  # "cross", "ccw" or "cw"
    crossing: int | None = None

    @staticmethod
    def cross(c: int) -> Event:
        return Event("cross", c)

    def to_json(self) -> dict:
        return {"cross": self.crossing} if self.kind == "cross" else {"ext": self.kind}


@dataclass(frozen=True)
class HeegaardDiagram:
    genus: int
    lower: tuple[tuple[int, ...], ...]
    upper: tuple[tuple[Event, ...], ...]
    psi: dict[int, tuple[Fraction, Fraction]] = field(default_factory=dict)
    direction: dict[int, int] = field(default_factory=dict)
    pairing: tuple[int, ...] = ()
    name: str = ""

    def crossings(self) -> list[int]:
        return [c for circ in self.lower for c in circ]

    def upper_crossings(self, k: int) -> list[int]:
        return [e.crossing for e in self.upper[k] if e.kind == "cross"]

    def lower_of(self) -> dict[int, tuple[int, int]]:
        """crossing -> (lower circle, 1-based position)."""
        return {c: (i, p + 1) for i, circ in enumerate(self.lower) for p, c in enumerate(circ)}

    def upper_of(self) -> dict[int, tuple[int, int]]:
        out = {}
        for k in range(len(self.upper)):
            for p, c in enumerate(self.upper_crossings(k)):
                out[c] = (k, p + 1)
        return out

    def dir(self, c: int) -> int:
        return self.direction.get(c, 1)

    def intersection_matrix(self) -> list[list[int]]:
        """Algebraic intersection numbers: rows upper circles, columns lower circles."""
        low = self.lower_of()
        B = [[0] * len(self.lower) for _ in self.upper]
        for k in range(len(self.upper)):
            for c in self.upper_crossings(k):
                B[k][low[c][0]] += self.dir(c)
        return B


# ---------------------------------------------------------------- rotation data


def antipode_power(psi_l: Fraction, psi_u: Fraction) -> int:
    """a_p = 2(ψ_l - ψ_u) - 1/2, required to be an integer."""
    a = 2 * (Fraction(psi_l) - Fraction(psi_u)) - Fraction(1, 2)
    if a.denominator != 1:
        raise HeegaardError(f"antipode power {a} is not an integer (ψ_l={psi_l}, ψ_u={psi_u})")
    return int(a)


def psi_powers(D: HeegaardDiagram) -> dict[int, int]:
    missing = [c for c in D.crossings() if c not in D.psi]
    if missing:
        raise HeegaardError(f"missing rotation numbers for crossings {missing}")
    return {c: antipode_power(*D.psi[c]) for c in D.crossings()}


def event_powers(D: HeegaardDiagram) -> dict[int, int]:
    """Powers from the extremum rule: start at 0 at each upper base point,
    +1 per counterclockwise extremum, -1 per clockwise one."""
    out = {}
    for events in D.upper:
        a = 0
        for e in events:
            if e.kind == CCW:
                a += 1
            elif e.kind == CW:
                a -= 1
            else:
                out[e.crossing] = a
    return out


def parity_direction(D: HeegaardDiagram) -> dict[int, int]:
    """Direction implied by the events: each extremum reverses the vertical sense.
    The first crossing of each circle keeps its recorded direction (default up)."""
    out = {}
    for events in D.upper:
        first = next((e.crossing for e in events if e.kind == "cross"), None)
        if first is None:
            continue
        flips = 0
        base = None
        for e in events:
            if e.kind in (CCW, CW):
                flips += 1
            else:
                if base is None:
                    base = D.dir(first) * (-1) ** flips
                out[e.crossing] = base * (-1) ** flips
    return out


def validate(D: HeegaardDiagram) -> Report:
    checks = []
    low = [c for circ in D.lower for c in circ]
    up = [e.crossing for circ in D.upper for e in circ if e.kind == "cross"]
    bad_kind = [e.kind for circ in D.upper for e in circ if e.kind not in ("cross", CCW, CW)]
    shape_ok = len(D.lower) == D.genus == len(D.upper) and not bad_kind
    checks.append(Check("genus matches circle counts", 0.0 if shape_ok else 1.0, 0.0))
    once = len(set(low)) == len(low) and sorted(low) == sorted(up)
    checks.append(Check("each crossing once on a lower and once on an upper circle", 0.0 if once else 1.0, 0.0))
    if D.pairing:
        ok = sorted(D.pairing) == list(range(D.genus))
        checks.append(Check("pairing is a bijection", 0.0 if ok else 1.0, 0.0))
    integral = 0.0
    try:
        from_psi = psi_powers(D)
    except HeegaardError:
        from_psi, integral = {}, 1.0
    checks.append(Check("a_p integral", integral, 0.0))
    ev = event_powers(D)
    flips = sum(1 for c, a in ev.items() if D.direction and D.dir(c) != parity_direction(D)[c])
    checks.append(Check("directions flip exactly at extrema", float(flips), 0.0))
    mismatch = sum(1 for c, a in from_psi.items() if ev.get(c) != a)
    checks.append(Check("ψ powers agree with extremum propagation", float(mismatch) if not integral else 1.0, 0.0))
    return Report(tuple(checks))


def ensure_valid(D: HeegaardDiagram) -> HeegaardDiagram:
    rep = validate(D)
    if not rep.ok:
        raise HeegaardError(f"invalid Heegaard diagram {D.name!r}: " + ", ".join(rep.failed()))
    return D


# Lower circles run horizontally, so the tangent keeps a fixed angle to the combing
# along them; this constant is the lower rotation number at every crossing.
LOWER_PSI = Fraction(1, 4)


def canonical_combing(D: HeegaardDiagram) -> HeegaardDiagram:
    """Attach rotation numbers realizing the standard-position combing.

    ψ_l is constant on the horizontal lower circles. Along an upper circle the
    tangent turns by half a turn at each extremum, which moves ψ_u by -1/2 (ccw)
    or +1/2 (cw) relative to the base point.
    """
    if len(D.lower) != D.genus or len(D.upper) != D.genus:
        raise HeegaardError("layout is not in standard position: circle counts differ from genus")
    if D.pairing and sorted(D.pairing) != list(range(D.genus)):
        raise HeegaardError("layout is not in standard position: pairing is not a bijection")
    psi = {}
    for events in D.upper:
        turn = Fraction(0)
        for e in events:
            if e.kind == CCW:
                turn -= Fraction(1, 2)
            elif e.kind == CW:
                turn += Fraction(1, 2)
            else:
                psi[e.crossing] = (LOWER_PSI, turn)
    return ensure_valid(replace(D, psi=psi))


# ---------------------------------------------------------------- builders


def lens_space_heegaard(p: int, q: int) -> HeegaardDiagram:
    """Genus-1 diagram of L(p, q); (1, 0) is S³ and (0, 1) is S¹×S²."""
    if p == 0:
        if q != 1:
            raise InputError("S¹×S² is written lens:0:1")
        D = HeegaardDiagram(1, ((),), ((),), pairing=(0,), name="S1xS2")
        return canonical_combing(D)
    if p < 1 or q < 0 or gcd(p, q) != 1:
        raise InputError(f"invalid lens parameters ({p}, {q})")
    q %= p  # L(p, q) depends on q mod p only
    lower = tuple(range(p))
    # the base point sits beside the right attaching disc, so the rightmost
    # crossing is visited last; consecutive visits step by q along the lower circle
    order = tuple(((p - 1) + (k + 1) * q) % p for k in range(p))
    upper = (tuple(Event.cross(c) for c in order),)
    name = "S3" if p == 1 else f"L({p},{q})"
    D = HeegaardDiagram(1, (lower,), upper, direction={c: 1 for c in lower}, pairing=(0,), name=name)
    return canonical_combing(D)


def s3_heegaard() -> HeegaardDiagram:
    return lens_space_heegaard(1, 0)


def s1xs2_heegaard() -> HeegaardDiagram:
    return lens_space_heegaard(0, 1)


def _lam(k: int) -> int:  # Λ_(k)
    return k - 1


def _lamp(k: int) -> int:  # Λ'_(k)
    return 4 + k


def poincare_heegaard() -> HeegaardDiagram:
    """Genus-2 diagram labelled as the Poincaré homology sphere (two lower circles
    with 5 and 8 crossings), transcribed from its standard drawing.

    Crossing ids 0..4 are Λ_(1..5) and 5..12 are Λ'_(1..8). Extremum events
    record the net turning between consecutive crossings; the drawing's
    individual bends are not enumerated. Directions follow the extremum parity.
    The resulting relation matrix has determinant -3, so abelian algebras do not
    see a homology sphere here (Z_Kup with C[Z_3] is 3).
    """
    X = Event.cross
    ccw, cw = Event(CCW), Event(CW)
    first = (ccw, X(_lamp(3)), cw, X(_lam(1)), X(_lamp(5)), cw, X(_lam(3)), ccw, X(_lamp(1)), cw, X(_lam(5)))
    second = (X(_lam(4)), ccw, X(_lamp(4)), X(_lamp(2)), cw, X(_lam(2)), X(_lamp(6)), X(_lamp(7)), X(_lamp(8)))
    lower = (tuple(_lam(k) for k in range(1, 6)), tuple(_lamp(k) for k in range(1, 9)))
    D = HeegaardDiagram(2, lower, (first, second), direction={_lamp(3): -1, _lam(4): 1}, pairing=(0, 1), name="Poincare")
    return canonical_combing(replace(D, direction=parity_direction(D)))


# ---------------------------------------------------------------- JSON


def load_json(text: str) -> HeegaardDiagram:
    """{"genus", "lower", "upper", "psi"} plus optional "direction": [[id, ±1], ...]."""
    try:
        data = json.loads(text)
        g = int(data["genus"])
        lower = tuple(tuple(int(c) for c in circ) for circ in data["lower"])
        upper = []
        for circ in data["upper"]:
            evs = []
            for item in circ:
                if "cross" in item:
                    evs.append(Event.cross(int(item["cross"])))
                elif item.get("ext") in (CCW, CW):
                    evs.append(Event(item["ext"]))
                else:
                    raise InputError(f"bad upper event {item!r}")
            upper.append(tuple(evs))
        psi = {int(c): (Fraction(int(a), int(b)), Fraction(int(x), int(y))) for c, a, b, x, y in data.get("psi", [])}
        direction = {int(c): int(s) for c, s in data.get("direction", [])}
        pairing = tuple(int(k) for k in data.get("pairing", range(g)))
    except InputError:
        raise
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise InputError(f"malformed Heegaard JSON: {exc}") from exc
    D = HeegaardDiagram(g, lower, tuple(upper), psi, direction, pairing, name=data.get("name", "json"))
    if not direction:
        D = replace(D, direction=parity_direction(D))
    if not psi:
        return canonical_combing(D)
    return ensure_valid(D)


def dump_json(D: HeegaardDiagram) -> str:
    psi = [[c, pl.numerator, pl.denominator, pu.numerator, pu.denominator] for c, (pl, pu) in sorted(D.psi.items())]
    out = {
        "genus": D.genus,
        "lower": [list(c) for c in D.lower],
        "upper": [[e.to_json() for e in circ] for circ in D.upper],
        "psi": psi,
        "direction": [[c, s] for c, s in sorted(D.direction.items())],
        "pairing": list(D.pairing),
        "name": D.name,
    }
    return json.dumps(out)
