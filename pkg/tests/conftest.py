"""Shared helpers: seeded pseudo-random geometry generators."""

from __future__ import annotations

import random
from fractions import Fraction

from torcap.lattice import MomentPolygon, UnimodularAffineMap, convex_hull


def random_lattice_polygon(rng: random.Random, size: int = 4) -> MomentPolygon:
    """Convex lattice polygon inside [0, size]^2 with at least 3 vertices."""
    while True:
        pts = [(Fraction(rng.randint(0, size)), Fraction(rng.randint(0, size)))
               for _ in range(rng.randint(4, 8))]
        hull = convex_hull(pts)
        if len(hull) >= 3:
            return MomentPolygon(tuple(hull))


def random_domain_polygon(rng: random.Random, size: int = 4) -> MomentPolygon:
    """Convex lattice polygon with the origin corner and both axis edges."""
    a = rng.randint(1, size)
    b = rng.randint(1, size)
    pts = [(Fraction(0), Fraction(0)), (Fraction(a), Fraction(0)), (Fraction(0), Fraction(b))]
    for _ in range(rng.randint(0, 3)):
        pts.append((Fraction(rng.randint(0, size)), Fraction(rng.randint(0, size))))
    return MomentPolygon(tuple(convex_hull(pts)))


def random_unimodular(rng: random.Random) -> UnimodularAffineMap:
    """Product of random shears with a random integer translation."""
    m = ((1, 0), (0, 1))
    for _ in range(rng.randint(1, 3)):
        k = rng.randint(-2, 2)
        if rng.random() < 0.5:
            s = ((1, k), (0, 1))
        else:
            s = ((1, 0), (k, 1))
        m = (
            (m[0][0] * s[0][0] + m[0][1] * s[1][0], m[0][0] * s[0][1] + m[0][1] * s[1][1]),
            (m[1][0] * s[0][0] + m[1][1] * s[1][0], m[1][0] * s[0][1] + m[1][1] * s[1][1]),
        )
    t = (Fraction(rng.randint(-3, 3)), Fraction(rng.randint(-3, 3)))
    return UnimodularAffineMap(m, t)
