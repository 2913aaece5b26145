"""Small hand-built drawings shared by the validator, CLI and acceptance tests."""

import cmath
import math

from lombardikit.geom import DirectedArc
from lombardikit.graphs import EmbeddedGraph
from lombardikit.lombardi import LombardiDrawing

T8 = math.tan(math.pi / 8)
SQUARE = (1, 1j, -1, -1j)

C4 = EmbeddedGraph(
    "C4", 0, ("red",) * 4,
    ((0, 1), (1, 2), (2, 3), (0, 3)),
    ((1, 3), (2, 0), (3, 1), (0, 2)),
)


def unit_circle_c4() -> LombardiDrawing:
    """The 4-cycle drawn along the unit circle."""
    return LombardiDrawing.from_bulges(C4, SQUARE, [-T8, -T8, -T8, T8])


def angle_defect() -> LombardiDrawing:
    """Vertex 1 pushed out to 1.1i; its two arcs keep the tangents at 0 and 2."""
    good = unit_circle_c4()
    p = 1.1j
    a01 = DirectedArc.from_psi(1, p, math.pi / 2 - cmath.phase(p - 1))
    a12 = DirectedArc.from_psi(p, -1, cmath.phase(-1 - p) + math.pi / 2)
    return LombardiDrawing(C4, (1, p, -1, -1j), (a01, a12, good.arcs[2], good.arcs[3]))


def crossing() -> LombardiDrawing:
    """Two straight diameters of the square."""
    g = EmbeddedGraph("crossing", 0, ("red",) * 4, ((0, 2), (1, 3)), ((2,), (3,), (0,), (1,)))
    return LombardiDrawing.from_bulges(g, SQUARE, [0.0, 0.0])


def rotation_mismatch() -> LombardiDrawing:
    """Two perfect 3-stars where the second one's rotation is listed clockwise."""
    e = lambda a: cmath.exp(1j * a)  # noqa: E731
    pos = [0, 2, e(2 * math.pi / 3), e(4 * math.pi / 3), 2 + e(math.pi / 3), 2 + e(-math.pi / 3)]
    g = EmbeddedGraph(
        "double star", 0, ("blue", "blue", "red", "red", "red", "red"),
        ((0, 1), (0, 2), (0, 3), (1, 4), (1, 5)),
        ((1, 2, 3), (0, 4, 5), (0,), (0,), (1,), (1,)),
    )
    return LombardiDrawing.from_bulges(g, pos, [0.0] * 5)
