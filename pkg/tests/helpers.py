"""Shared diagram fixtures for the test modules."""

from hopfknot.heegaard import Event, HeegaardDiagram, canonical_combing, lens_space_heegaard, poincare_heegaard


def connected_sum(A: HeegaardDiagram, B: HeegaardDiagram) -> HeegaardDiagram:
    """Diagrams placed side by side on a surface of genus g_A + g_B."""
    off = 1 + max(A.crossings(), default=-1)

    def shift(e):
        return Event.cross(e.crossing + off) if e.kind == "cross" else e

    D = HeegaardDiagram(
        A.genus + B.genus,
        A.lower + tuple(tuple(c + off for c in circ) for circ in B.lower),
        A.upper + tuple(tuple(shift(e) for e in circ) for circ in B.upper),
        direction={**{c: A.dir(c) for c in A.crossings()}, **{c + off: B.dir(c) for c in B.crossings()}},
        pairing=tuple(range(A.genus + B.genus)),
        name=f"{A.name}#{B.name}",
    )
    return canonical_combing(D)


FIXTURES = {
    "s3": lambda: lens_space_heegaard(1, 0),
    "s1xs2": lambda: lens_space_heegaard(0, 1),
    "lens:2:1": lambda: lens_space_heegaard(2, 1),
    "lens:3:1": lambda: lens_space_heegaard(3, 1),
    "lens:5:2": lambda: lens_space_heegaard(5, 2),
    "lens:7:2": lambda: lens_space_heegaard(7, 2),
    "poincare": poincare_heegaard,
    "lens:2:1#lens:3:1": lambda: connected_sum(lens_space_heegaard(2, 1), lens_space_heegaard(3, 1)),
}
