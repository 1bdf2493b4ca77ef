"""Morse-sliced framed link diagrams.

A diagram is a bottom-to-top list of slices, each one of
  ("cup", i)  new strands at positions i, i+1
  ("cap", i)  strands i, i+1 are joined and end
  ("x+", i)   strands i, i+1 swap; the one moving SW→NE passes over
  ("x-", i)   strands i, i+1 swap; the one moving SE→NW passes over
Framing is the blackboard framing.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .foundation import InputError
from .heegaard import HeegaardDiagram, HeegaardError

KINDS = ("cup", "cap", "x+", "x-")


@dataclass(frozen=True)
class Crossing:
    slice: int
    kind: str
    sw: int  # segment entering from lower left (continues to upper right)
    se: int  # segment entering from lower right
    nw: int  # segment leaving to upper left (continuation of se)
    ne: int  # segment leaving to upper right (continuation of sw)

    @property
    def over_is_sw_ne(self) -> bool:
        return self.kind == "x+"


@dataclass(frozen=True)
class Step:
    """One item of a component traversal.

    kind "seg": travelling along segment ``ref`` (upward if ``up``)
    kind "cross": passing crossing ``ref`` as the ``role`` strand ("over"/"under")
    kind "ext": passing an extremum; ``turn`` is +1 counterclockwise, -1 clockwise
    """

    kind: str
    ref: int = -1
    up: bool = True
    role: str = ""
    turn: int = 0


@dataclass(frozen=True)
class FramedLinkDiagram:
    slices: tuple[tuple[str, int], ...]
    crossings: tuple[Crossing, ...]
    components: tuple[tuple[Step, ...], ...]
    crossing_component: tuple[tuple[int, int], ...]  # (component of SW–NE strand, of SE–NW strand)
    signs: tuple[int, ...]

    @property
    def n_components(self) -> int:
        return len(self.components)

    def writhe(self, k: int) -> int:
        return sum(s for (a, b), s in zip(self.crossing_component, self.signs) if a == b == k)

    def to_json(self) -> str:
        return json.dumps({"slices": [list(s) for s in self.slices]})


def _trace(slices: Sequence[tuple[str, int]]):
    """Assign segment ids and record how segment ends are attached."""
    current: list[int] = []
    n_seg = 0
    bottom: dict[int, tuple] = {}
    top: dict[int, tuple] = {}
    crossings: list[Crossing] = []
    for level, (kind, pos) in enumerate(slices):
        n = len(current)
        if kind == "cup":
            if not 0 <= pos <= n:
                raise InputError(f"slice {level}: cup at {pos} with {n} strands")
            a, b = n_seg, n_seg + 1
            n_seg += 2
            bottom[a] = ("cup", b, "L")
            bottom[b] = ("cup", a, "R")
            current[pos:pos] = [a, b]
        elif kind == "cap":
            if not 0 <= pos <= n - 2:
                raise InputError(f"slice {level}: cap at {pos} with {n} strands")
            a, b = current[pos], current[pos + 1]
            top[a] = ("cap", b, "L")
            top[b] = ("cap", a, "R")
            del current[pos : pos + 2]
        elif kind in ("x+", "x-"):
            if not 0 <= pos <= n - 2:
                raise InputError(f"slice {level}: crossing at {pos} with {n} strands")
            sw, se = current[pos], current[pos + 1]
            nw, ne = n_seg, n_seg + 1
            n_seg += 2
            c = len(crossings)
            crossings.append(Crossing(level, kind, sw, se, nw, ne))
            top[sw] = ("x", c, ne)
            top[se] = ("x", c, nw)
            bottom[ne] = ("x", c, sw)
            bottom[nw] = ("x", c, se)
            current[pos : pos + 2] = [nw, ne]
        else:
            raise InputError(f"slice {level}: unknown piece {kind!r}")
    if current:
        raise InputError(f"{len(current)} dangling strands at the top")
    return n_seg, bottom, top, crossings


def _role(cr: Crossing, seg_lower: int) -> str:
    """Over/under role of the strand whose lower arm is ``seg_lower``."""
    on_sw_ne = seg_lower == cr.sw
    return "over" if on_sw_ne == cr.over_is_sw_ne else "under"


def from_morse(slices: Sequence, reverse: Sequence[int] = ()) -> FramedLinkDiagram:
    """Build a diagram; components start at their lowest cup, leaving upward along
    its left leg, unless listed in ``reverse``."""
    slices = tuple((str(k), int(p)) for k, p in slices)
    n_seg, bottom, top, crossings = _trace(slices)
    seen: set[int] = set()
    comps: list[tuple[Step, ...]] = []
    starts = [seg for seg in range(n_seg) if bottom.get(seg, ("",))[0] == "cup" and bottom[seg][2] == "L"]
    for start in starts:
        if start in seen:
            continue
        steps: list[Step] = []
        seg, up = start, True
        while True:
            seen.add(seg)
            steps.append(Step("seg", seg, up))
            end = top[seg] if up else bottom[seg]
            if end[0] == "x":
                cr = crossings[end[1]]
                lower_arm = seg if up else end[2]
                steps.append(Step("cross", end[1], up, _role(cr, lower_arm)))
                seg = end[2]
            elif end[0] == "cap":
                # left->right over a cap is clockwise
                steps.append(Step("ext", turn=-1 if end[2] == "L" else 1))
                seg, up = end[1], False
            else:  # cup
                steps.append(Step("ext", turn=1 if end[2] == "L" else -1))
                seg, up = end[1], True
            if seg == start and up:
                break
        comps.append(tuple(steps))
    for k in reverse:
        if not 0 <= k < len(comps):
            raise InputError(f"no component {k} to reverse")
        comps[k] = _reversed(comps[k])
    owner: dict[int, tuple[int, bool]] = {}
    for k, steps in enumerate(comps):
        for st in steps:
            if st.kind == "seg":
                owner[st.ref] = (k, st.up)
    cc, signs = [], []
    for cr in crossings:
        (ka, upa), (kb, upb) = owner[cr.sw], owner[cr.se]
        geometric = 1 if cr.kind == "x+" else -1
        cc.append((ka, kb))
        signs.append(geometric * (1 if upa else -1) * (1 if upb else -1))
    return FramedLinkDiagram(slices, tuple(crossings), tuple(comps), tuple(cc), tuple(signs))


def _reversed(steps: tuple[Step, ...]) -> tuple[Step, ...]:
    rev = []
    for st in reversed(steps):
        if st.kind == "seg":
            rev.append(Step("seg", st.ref, not st.up))
        elif st.kind == "cross":
            rev.append(Step("cross", st.ref, not st.up, st.role))
        else:
            rev.append(Step("ext", turn=-st.turn))
    # restart on an upward segment
    k = next(i for i, st in enumerate(rev) if st.kind == "seg" and st.up)
    return tuple(rev[k:] + rev[:k])


def load_json(text: str) -> FramedLinkDiagram:
    try:
        data = json.loads(text)
        slices = [(s[0], s[1]) for s in data["slices"]]
        reverse = data.get("reverse", [])
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise InputError(f"malformed Morse JSON: {exc}") from exc
    return from_morse(slices, reverse)


# ---------------------------------------------------------------- linear algebra


def linking_matrix(L: FramedLinkDiagram) -> list[list[int]]:
    c = L.n_components
    twice = [[0] * c for _ in range(c)]
    for (a, b), s in zip(L.crossing_component, L.signs):
        if a == b:
            twice[a][a] += 2 * s
        else:
            twice[a][b] += s
            twice[b][a] += s
    for i in range(c):
        for j in range(c):
            if twice[i][j] % 2:
                raise AssertionError("odd inter-component crossing count in a closed diagram")
    return [[v // 2 for v in row] for row in twice]


def signature(matrix: Sequence[Sequence[int]]) -> int:
    """Signature by symmetric Gaussian elimination over the rationals."""
    A = [[Fraction(v) for v in row] for row in matrix]
    n = len(A)
    if any(len(r) != n for r in A) or any(A[i][j] != A[j][i] for i in range(n) for j in range(n)):
        raise InputError("signature needs a square symmetric matrix")
    pos = neg = 0
    active = list(range(n))
    while active:
        piv = next((i for i in active if A[i][i] != 0), None)
        if piv is None:
            pair = next(((i, j) for i in active for j in active if i < j and A[i][j] != 0), None)
            if pair is None:
                break
            i, j = pair
            # e_i -> e_i + e_j makes the diagonal entry 2A_ij nonzero
            for k in range(n):
                A[i][k] += A[j][k]
            for k in range(n):
                A[k][i] += A[k][j]
            piv = i
        p = A[piv][piv]
        pos += p > 0
        neg += p < 0
        active.remove(piv)
        for i in active:
            f = A[i][piv] / p
            if f:
                for k in range(n):
                    A[i][k] -= f * A[piv][k]
        for i in active:
            A[piv][i] = A[i][piv] = Fraction(0)
    return pos - neg


# ---------------------------------------------------------------- builders


def kink(pos: int, sign: int) -> list[tuple[str, int]]:
    """A curl on the strand at ``pos`` adding ``sign`` to its writhe."""
    return [("cup", pos + 1), ("x+" if sign > 0 else "x-", pos), ("cap", pos + 1)]


def framed_unknot(framing: int) -> FramedLinkDiagram:
    word = [("cup", 0)]
    for _ in range(abs(framing)):
        word += kink(0, 1 if framing > 0 else -1)
    return from_morse(word + [("cap", 0)])


def hopf_link() -> FramedLinkDiagram:
    # tracing orients both circles the same way; flip one so the clasp is positive
    return from_morse([("cup", 0), ("cup", 2), ("x+", 1), ("x+", 1), ("cap", 2), ("cap", 0)], reverse=[1])


def negative_continued_fraction(p: int, q: int) -> list[int]:
    """p/q = a1 - 1/(a2 - 1/(...)), each a_i >= 2."""
    out = []
    while q:
        a = -(-p // q)
        out.append(a)
        p, q = q, a * q - p
    return out


def lens_space_chain(p: int, q: int) -> FramedLinkDiagram:
    """Chain of unknots with framings from the negative continued fraction of p/q."""
    from math import gcd

    if p == 1:
        return from_morse([])
    if p < 1 or not 0 < q < p or gcd(p, q) != 1:
        raise InputError(f"invalid lens parameters ({p}, {q})")
    frames = negative_continued_fraction(p, q)
    word: list[tuple[str, int]] = [("cup", 0)]
    for i in range(1, len(frames)):
        word += [("cup", 2 * i), ("x+", 2 * i - 1), ("x+", 2 * i - 1)]
    for i, a in enumerate(frames):
        for _ in range(abs(a)):
            word += kink(2 * i, 1 if a > 0 else -1)
    word += [("cap", 0)] * len(frames)
    L = from_morse(word)
    # alternate orientations so every clasp links +1
    B = linking_matrix(L)
    seen = {0: 1}
    stack = [0]
    while stack:
        i = stack.pop()
        for j in range(L.n_components):
            if j != i and B[i][j] and j not in seen:
                seen[j] = seen[i] * B[i][j]
                stack.append(j)
    flip = [j for j, s in seen.items() if s < 0]
    return from_morse(word, reverse=flip) if flip else L


def with_kink_pair(L: FramedLinkDiagram, slice_index: int, pos: int) -> FramedLinkDiagram:
    """Insert a cancelling (+1, -1) curl pair on strand ``pos`` just above ``slice_index``."""
    word = list(L.slices)
    word[slice_index + 1 : slice_index + 1] = kink(pos, 1) + kink(pos, -1)
    return from_morse(word)


# ---------------------------------------------------------------- chain-mail


@dataclass(frozen=True)
class ChainMail:
    link: FramedLinkDiagram
    lower_components: tuple[int, ...]
    upper_components: tuple[int, ...]
    correspondence: dict[int, int] = field(default_factory=dict)  # Heegaard crossing -> link crossing
    faithful: bool = True  # False when only the intersection data is realized


def _belt(start: int, width: int) -> list[tuple[str, int]]:
    """A 0-framed circle around strands start..start+width-1: back arc under, front arc over."""
    word = [("cup", start)]
    word += [("x-", start + 1 + k) for k in range(width)]
    word += [("x+", start + k) for k in range(width)]
    word += [("cap", start + width)]
    return word


def _sort_moves(order: list, target: list) -> list[int]:
    """Adjacent transpositions turning ``order`` into ``target``."""
    rank = {v: i for i, v in enumerate(target)}
    cur = list(order)
    moves = []
    for i in range(len(cur)):
        for j in range(len(cur) - 1 - i):
            if rank[cur[j]] > rank[cur[j + 1]]:
                cur[j], cur[j + 1] = cur[j + 1], cur[j]
                moves.append(j)
    return moves


def _band_chain_mail(D: HeegaardDiagram) -> tuple[list, dict[int, int]]:
    """Fallback band layout for data whose cut surface is not planar.

    Every lower circle becomes a belt around its slots and the upper arcs are
    routed above and below the band with crossings among themselves, so only
    the intersection data (and hence linking matrix and signature) is faithful.
    """
    slot = {c: i for i, c in enumerate(c for circ in D.lower for c in circ)}
    n_slots = len(slot)
    below, above = [], []  # pairs of band strand labels joined under / over the band
    free_loops = 0
    n_ret = 0
    for k in range(D.genus):
        cs = D.upper_crossings(k)
        if not cs:
            free_loops += 1
            continue
        for i, c in enumerate(cs):
            nxt = cs[(i + 1) % len(cs)]
            exit_top = D.dir(c) > 0
            entry_bottom = D.dir(nxt) > 0
            a, b = slot[c], slot[nxt]
            if exit_top and not entry_bottom:
                above.append((a, b))
            elif not exit_top and entry_bottom:
                below.append((a, b))
            else:
                r = n_slots + n_ret
                n_ret += 1
                if exit_top:
                    above.append((a, r))
                    below.append((r, b))
                else:
                    below.append((a, r))
                    above.append((r, b))
    band = list(range(n_slots + n_ret))
    word: list[tuple[str, int]] = []
    cup_order = []
    for a, b in below:
        word.append(("cup", len(cup_order)))
        cup_order += [a, b]
    word += [("x+", j) for j in _sort_moves(cup_order, band)]
    front: dict[int, int] = {}
    start = 0
    for circ in D.lower:
        width = len(circ)
        base = len(word) + 1 + width
        for k, c in enumerate(circ):
            front[c] = base + k
        word += _belt(start, width)
        start += width
    cap_order = [v for pair in above for v in pair]
    word += [("x+", j) for j in _sort_moves(band, cap_order)]
    word += [("cap", 0)] * len(above)
    for _ in range(free_loops):
        word += [("cup", 0), ("cap", 0)]
    return word, front


# A port is one side of a lower circle in the surface cut open along all lower
# circles: (k, +1) is the side below the horizontal line, (k, -1) the side above.
# Its counterclockwise rotation lists the arcs attached to it, which is also the
# left-to-right order of its row when the handle leaves the port upwards.


def _cut_surface(D: HeegaardDiagram):
    low = {c: k for k, circ in enumerate(D.lower) for c in circ}
    rot = {}
    for k, circ in enumerate(D.lower):
        if circ:
            rot[(k, 1)] = [((k, 1), c) for c in circ]
            rot[(k, -1)] = [((k, -1), c) for c in reversed(circ)]
    opp = {}
    for u in range(D.genus):
        cs = D.upper_crossings(u)
        for i, c in enumerate(cs):
            n = cs[(i + 1) % len(cs)]
            a = ((low[c], -1 if D.dir(c) > 0 else 1), c)
            b = ((low[n], 1 if D.dir(n) > 0 else -1), n)
            opp[a], opp[b] = b, a
    return rot, opp


def _faces(rot, opp, ports):
    """Faces traced with the face on the left; each is a list of ("edge", h) and
    ("stub", port) entries in counterclockwise order."""
    seen, faces = set(), []
    for v in ports:
        for h in rot[v]:
            if h in seen:
                continue
            face = []
            while h not in seen:
                seen.add(h)
                face.append(("edge", h))
                back = opp[h]
                r = rot[back[0]]
                i = r.index(back)
                if i == 0:
                    face.append(("stub", back[0]))
                h = r[i - 1]
            faces.append(face)
    return faces


def _surface_tour(rot, opp, ports) -> tuple[list, list] | None:
    """Axis order and upper chords of one connected piece of the cut surface.

    The axis is the boundary of a thin neighbourhood of a dual spanning tree,
    run with the tree on its left and touching every port at its handle corner.
    Arcs crossed by the tree contribute one chord inside the neighbourhood.
    """
    faces = _faces(rot, opp, ports)
    n_edges = sum(len(rot[v]) for v in ports) // 2
    if len(ports) - n_edges + len(faces) != 2:
        return None
    face_of = {el[1]: f for f, face in enumerate(faces) for el in face if el[0] == "edge"}
    visited = {0}
    tree = set()
    queue = [0]
    while queue:
        f = queue.pop(0)
        for kind, h in faces[f]:
            if kind == "edge" and face_of[opp[h]] not in visited:
                visited.add(face_of[opp[h]])
                tree.add(h)
                queue.append(face_of[opp[h]])
    axis, crossed = [], []

    def tour(f: int, skip: int | None) -> None:
        face = faces[f]
        order = range(len(face)) if skip is None else [(skip + 1 + i) % len(face) for i in range(len(face) - 1)]
        for i in order:
            kind, x = face[i]
            if kind == "stub":
                axis.extend(rot[x])
            elif x in tree:
                # the outbound crossing lies nearer the tail of x
                axis.append(("g", x, 0))
                child = faces[face_of[opp[x]]]
                tour(face_of[opp[x]], child.index(("edge", opp[x])))
                axis.append(("g", x, 1))
                crossed.append(x)

    tour(0, None)
    return axis, crossed


def _surface_chain_mail(D: HeegaardDiagram) -> tuple[list, dict[int, int]] | None:
    """Chain mail drawn on the boundary of a ball with one flat band per handle.

    Upper arcs lie disjointly on the ball's boundary; the strands through a
    handle run parallel inside its band, which passes over everything else and
    is encircled by the belt of that lower circle. Returns None when the cut
    surface data is not planar.
    """
    rot, opp = _cut_surface(D)
    # connected pieces of the cut surface, each laid out on its own stretch of axis
    parent = {v: v for v in rot}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for a, b in opp.items():
        parent[find(a[0])] = find(b[0])
    pieces: dict = {}
    for v in rot:
        pieces.setdefault(find(v), []).append(v)
    axis, lower, upper = [], [], []
    for ports in pieces.values():
        if any((k, -s) not in ports for k, s in ports):
            return None
        toured = _surface_tour(rot, opp, ports)
        if toured is None:
            return None
        piece_axis, crossed = toured
        axis += piece_axis
        cut = set(crossed)
        for h in (h for v in ports for h in rot[v]):
            if h in cut:
                lower += [(h, ("g", h, 0)), (("g", h, 1), opp[h])]
                upper.append((("g", h, 0), ("g", h, 1)))
            elif opp[h] not in cut and h < opp[h]:
                lower.append((h, opp[h]))
    at = {x: i for i, x in enumerate(axis)}
    lower = sorted((tuple(sorted(ch, key=at.get)) for ch in lower), key=lambda ch: at[ch[0]])
    upper = sorted((tuple(sorted(ch, key=at.get)) for ch in upper), key=lambda ch: at[ch[1]] - at[ch[0]])

    word: list[tuple[str, int]] = []
    cur: list = []
    for a, b in lower:
        i = sum(1 for x in cur if at[x] < at[a])
        word.append(("cup", i))
        cur[i:i] = [a, b]
    for a, b in upper:
        j = cur.index(b)
        # band strands between the ends slide over b
        while cur[j - 1] != a:
            word.append(("x+", j - 1))
            cur[j - 1], cur[j] = cur[j], cur[j - 1]
            j -= 1
        word.append(("cap", j - 1))
        del cur[j - 1 : j + 1]
    # pair the two sides of each handle; higher-numbered bands pass over lower ones
    bands = list(dict.fromkeys(h[0][0] for h in cur))
    target = [h for k in bands for v in dict.fromkeys(x[0] for x in cur if x[0][0] == k) for h in rot[v]]
    rank = {h: i for i, h in enumerate(target)}
    for i in range(len(cur)):
        for j in range(len(cur) - 1 - i):
            u, w = cur[j], cur[j + 1]
            if rank[u] > rank[w]:
                word.append(("x+" if u[0][0] > w[0][0] else "x-", j))
                cur[j], cur[j + 1] = w, u
    front: dict[int, int] = {}
    for k in bands:
        circ = D.lower[k]
        p = len(circ)
        head = 0 if cur[0][0] == (k, 1) else p
        base = len(word) + 1 + p
        for i, c in enumerate(circ):
            front[c] = base + i
        word += _belt(head, p)
        word += [("cap", p - 1 - i) for i in range(p)]
        cur = cur[2 * p :]
    for circ in D.lower:
        if not circ:
            word += _belt(0, 0)
    for u in range(D.genus):
        if not D.upper_crossings(u):
            word += [("cup", 0), ("cap", 0)]
    return word, front


def chain_mail(D: HeegaardDiagram) -> ChainMail:
    """Surgery link for M # (-M): lower circles as 0-framed belts, upper circles
    pushed into the lower handlebody.

    Data whose cut surface is not planar cannot come from an embedded diagram;
    it gets the band layout and ``faithful=False``.
    """
    if len(D.lower) != D.genus or len(D.upper) != D.genus:
        raise HeegaardError("diagram is not in standard position")
    built = _surface_chain_mail(D)
    faithful = built is not None
    word, front = built if faithful else _band_chain_mail(D)
    L = from_morse(word)
    slice_to_crossing = {cr.slice: i for i, cr in enumerate(L.crossings)}
    corr = {c: slice_to_crossing[s] for c, s in front.items()}
    # a front crossing has the belt on its SW–NE strand, the Heegaard slot on SE–NW
    lower_comp = {}
    for circ_i, circ in enumerate(D.lower):
        comps = {L.crossing_component[corr[c]][0] for c in circ}
        if len(comps) > 1:
            raise AssertionError("belt split across components")
        lower_comp[circ_i] = comps.pop() if comps else None
    upper_comp = {}
    for k in range(D.genus):
        comps = {L.crossing_component[corr[c]][1] for c in D.upper_crossings(k)}
        upper_comp[k] = comps.pop() if comps else None
    used = {v for v in list(lower_comp.values()) + list(upper_comp.values()) if v is not None}
    spare = iter(sorted(set(range(L.n_components)) - used))
    lower_ids = tuple(v if v is not None else next(spare) for v in lower_comp.values())
    upper_ids = tuple(v if v is not None else next(spare) for v in upper_comp.values())
    # orient each upper circle so it passes its first slot in the Heegaard direction
    flips = []
    for k, comp in enumerate(upper_ids):
        cs = D.upper_crossings(k)
        if not cs:
            continue
        cr = L.crossings[corr[cs[0]]]
        up = next(st.up for st in L.components[comp] if st.kind == "seg" and st.ref == cr.se)
        if up != (D.dir(cs[0]) > 0):
            flips.append(comp)
    if flips:
        L = from_morse(word, flips)
    return ChainMail(L, lower_ids, upper_ids, corr, faithful)
