"""Built-in polygon corpus.

A small spread of moment polygons used by the command line verifiers and the
test suite: smooth and singular, integral and rational, few and many edges.
"""

from __future__ import annotations

from fractions import Fraction

from . import lattice, toric
from .lattice import MomentPolygon


def _chop_at(p: MomentPolygon, vertex, eps) -> MomentPolygon:
    v = (Fraction(vertex[0]), Fraction(vertex[1]))
    i = p.vertices.index(v)
    return lattice.corner_chop(p, i, eps)


def _build() -> dict[str, MomentPolygon]:
    square = lattice.rectangle(1, 1)
    chopped_square = _chop_at(square, (1, 1), Fraction(1, 2))
    return {
        "unit-triangle": lattice.unit_triangle(),
        "double-triangle": lattice.triangle(2, 2),
        "unit-square": square,
        "rect-2x3": lattice.rectangle(2, 3),
        "rect-1x5": lattice.rectangle(1, 5),
        "chopped-square": chopped_square,
        "chopped-triangle": _chop_at(lattice.unit_triangle(), (1, 0), Fraction(1, 3)),
        "two-chop-square": _chop_at(chopped_square, (0, 1), Fraction(1, 4)),
        "singular-triangle": lattice.triangle(1, 2),
        "f2-polygon": MomentPolygon(((Fraction(0), Fraction(0)), (Fraction(3), Fraction(0)),
                                     (Fraction(1), Fraction(1)), (Fraction(0), Fraction(1)))),
    }


CORPUS: dict[str, MomentPolygon] = _build()

SMOOTH_NAMES = tuple(
    name for name, p in CORPUS.items() if toric.build_surface(p).smooth
)
