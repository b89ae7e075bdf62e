"""Exact rational planar lattice geometry.

Polygons with rational vertices, unimodular affine maps, areas, lattice point
counts and lattice width.  Everything is computed with `fractions.Fraction`;
no floating point enters anywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import ChopTooLarge, NoSmoothVertex, NotConvex, ZeroArea

Point = tuple[Fraction, Fraction]
IntVec = tuple[int, int]


def frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def point(x, y) -> Point:
    return (frac(x), frac(y))


def det2(u: Sequence, v: Sequence):
    """Determinant of the 2x2 matrix with rows (or columns) u, v."""
    return u[0] * v[1] - u[1] * v[0]


def cross(o: Point, a: Point, b: Point):
    """Signed area (x2) of the triangle o, a, b."""
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def primitive(v: IntVec) -> IntVec:
    """Divide an integer vector by the gcd of its entries."""
    g = math.gcd(v[0], v[1])
    if g == 0:
        raise ValueError("zero vector has no primitive form")
    return (v[0] // g, v[1] // g)


def primitive_direction(v: Point) -> IntVec:
    """Primitive integer vector parallel (and equal in direction) to v."""
    d = (frac(v[0]).denominator * frac(v[1]).denominator)
    ix, iy = int(v[0] * d), int(v[1] * d)
    return primitive((ix, iy))


@dataclass(frozen=True)
class UnimodularAffineMap:
    """x -> M x + t with M an integer matrix of determinant +-1."""

    m: tuple[IntVec, IntVec]  # rows
    t: Point

    def __post_init__(self):
        d = self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
        if d not in (1, -1):
            raise ValueError("matrix determinant must be +-1")
        object.__setattr__(self, "t", (frac(self.t[0]), frac(self.t[1])))

    @classmethod
    def identity(cls) -> "UnimodularAffineMap":
        return cls(((1, 0), (0, 1)), (Fraction(0), Fraction(0)))

    @classmethod
    def translation(cls, v) -> "UnimodularAffineMap":
        return cls(((1, 0), (0, 1)), (frac(v[0]), frac(v[1])))

    @property
    def det(self) -> int:
        return self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]

    def __call__(self, p: Point) -> Point:
        x, y = frac(p[0]), frac(p[1])
        return (
            self.m[0][0] * x + self.m[0][1] * y + self.t[0],
            self.m[1][0] * x + self.m[1][1] * y + self.t[1],
        )

    def compose(self, other: "UnimodularAffineMap") -> "UnimodularAffineMap":
        """self after other: (self.compose(other))(x) == self(other(x))."""
        a, b = self.m
        c, d = other.m
        m = (
            (a[0] * c[0] + a[1] * d[0], a[0] * c[1] + a[1] * d[1]),
            (b[0] * c[0] + b[1] * d[0], b[0] * c[1] + b[1] * d[1]),
        )
        return UnimodularAffineMap(m, self(other.t))

    def inverse(self) -> "UnimodularAffineMap":
        d = self.det
        a, b = self.m[0]
        c, e = self.m[1]
        inv = ((e * d, -b * d), (-c * d, a * d))
        ti = (
            -(inv[0][0] * self.t[0] + inv[0][1] * self.t[1]),
            -(inv[1][0] * self.t[0] + inv[1][1] * self.t[1]),
        )
        return UnimodularAffineMap(inv, ti)


@dataclass(frozen=True)
class MomentPolygon:
    """Strictly convex polygon with rational vertices, counterclockwise.

    The vertex tuple is canonicalized to start at the lexicographically
    smallest vertex so that equality is structural.
    """

    vertices: tuple[Point, ...]

    def __post_init__(self):
        pts = tuple((frac(x), frac(y)) for x, y in self.vertices)
        if len(pts) < 3:
            raise ZeroArea("a polygon needs at least 3 vertices")
        area2 = sum(det2(pts[i], pts[(i + 1) % len(pts)]) for i in range(len(pts)))
        if area2 == 0:
            raise ZeroArea("polygon has zero area")
        if area2 < 0:
            raise NotConvex("vertices must be listed counterclockwise")
        n = len(pts)
        for i in range(n):
            c = cross(pts[i], pts[(i + 1) % n], pts[(i + 2) % n])
            if c == 0:
                raise NotConvex("three consecutive vertices are collinear")
            if c < 0:
                raise NotConvex("polygon is not convex")
        start = min(range(n), key=lambda i: pts[i])
        object.__setattr__(self, "vertices", pts[start:] + pts[:start])

    def __len__(self) -> int:
        return len(self.vertices)

    def edge_data(self) -> list[tuple[IntVec, Fraction]]:
        """Per edge i (from vertex i to i+1): (inward primitive normal u,
        support number a) with <u, x> = -a on the edge."""
        out = []
        n = len(self.vertices)
        for i in range(n):
            v, w = self.vertices[i], self.vertices[(i + 1) % n]
            e = (w[0] - v[0], w[1] - v[1])
            u = primitive_direction((-e[1], e[0]))
            a = -(u[0] * v[0] + u[1] * v[1])
            out.append((u, a))
        return out

    def constraints(self) -> list[tuple[int, int, Fraction]]:
        """Half plane description: (ux, uy, c) meaning ux*x + uy*y >= c."""
        return [(u[0], u[1], -a) for (u, a) in self.edge_data()]


def area(p: MomentPolygon) -> Fraction:
    """Exact Euclidean area by the shoelace formula."""
    vs = p.vertices
    n = len(vs)
    return sum(det2(vs[i], vs[(i + 1) % n]) for i in range(n)) / 2


def _ceil(x) -> int:
    return math.ceil(x)


def _floor(x) -> int:
    return math.floor(x)


def count_in_halfplanes(cons: Iterable[tuple[int, int, Fraction]], y_lo: int, y_hi: int) -> int:
    """Count integer points satisfying ux*x + uy*y >= c for all constraints,
    scanning integer rows y in [y_lo, y_hi]."""
    cons = list(cons)
    total = 0
    for y in range(y_lo, y_hi + 1):
        lo, hi = None, None
        empty = False
        for ux, uy, c in cons:
            rhs = c - uy * y
            if ux > 0:
                b = _ceil(Fraction(rhs, ux))
                if lo is None or b > lo:
                    lo = b
            elif ux < 0:
                b = _floor(Fraction(rhs, ux))
                if hi is None or b < hi:
                    hi = b
            elif rhs > 0:
                empty = True
                break
        if empty:
            continue
        if lo is None or hi is None:
            raise ValueError("unbounded row in lattice point count")
        if hi >= lo:
            total += hi - lo + 1
    return total


def halfplane_vertices(cons: Sequence[tuple[int, int, Fraction]]) -> list[Point]:
    """Vertices of the (bounded) region cut out by the half planes.

    Returns the deduplicated corner points; empty list if infeasible.
    """
    pts: list[Point] = []
    n = len(cons)
    for i in range(n):
        ai, bi, ci = cons[i]
        for j in range(i + 1, n):
            aj, bj, cj = cons[j]
            d = ai * bj - bi * aj
            if d == 0:
                continue
            x = Fraction(ci * bj - bi * cj, d)
            y = Fraction(ai * cj - ci * aj, d)
            if all(a * x + b * y >= c for a, b, c in cons):
                q = (x, y)
                if q not in pts:
                    pts.append(q)
    return pts


def convex_hull(points: Iterable[Point]) -> list[Point]:
    """Strict convex hull, counterclockwise, collinear points dropped."""
    pts = sorted(set((frac(x), frac(y)) for x, y in points))
    if len(pts) <= 2:
        return pts
    lower: list[Point] = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[Point] = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 3:
        return sorted(set(pts))
    return hull


def lattice_count(p: MomentPolygon) -> int:
    """Number of integer points in the closed polygon."""
    ys = [v[1] for v in p.vertices]
    return count_in_halfplanes(p.constraints(), _ceil(min(ys)), _floor(max(ys)))


def boundary_lattice_count(p: MomentPolygon) -> int:
    """Number of integer points on the boundary (integral-vertex polygons)."""
    n = len(p.vertices)
    total = 0
    for i in range(n):
        v, w = p.vertices[i], p.vertices[(i + 1) % n]
        dx, dy = w[0] - v[0], w[1] - v[1]
        if dx.denominator != 1 or dy.denominator != 1:
            raise ValueError("boundary count needs integral vertices")
        total += math.gcd(int(dx), int(dy))
    return total


def translate(p: MomentPolygon, v) -> MomentPolygon:
    vx, vy = frac(v[0]), frac(v[1])
    return MomentPolygon(tuple((x + vx, y + vy) for x, y in p.vertices))


def scale(p: MomentPolygon, s) -> MomentPolygon:
    s = frac(s)
    if s <= 0:
        raise ValueError("scale factor must be positive")
    return MomentPolygon(tuple((s * x, s * y) for x, y in p.vertices))


def apply(t: UnimodularAffineMap, p: MomentPolygon) -> MomentPolygon:
    vs = [t(v) for v in p.vertices]
    if t.det < 0:
        vs.reverse()
    return MomentPolygon(tuple(vs))


def contains(p: MomentPolygon, q: MomentPolygon) -> bool:
    """True iff q is contained in p (vertices against p's half planes)."""
    cons = p.constraints()
    return all(a * x + b * y >= c for (x, y) in q.vertices for a, b, c in cons)


def contains_point(p: MomentPolygon, pt) -> bool:
    x, y = frac(pt[0]), frac(pt[1])
    return all(a * x + b * y >= c for a, b, c in p.constraints())


def minkowski_sum(p: MomentPolygon, q: MomentPolygon) -> MomentPolygon:
    sums = [(a[0] + b[0], a[1] + b[1]) for a in p.vertices for b in q.vertices]
    return MomentPolygon(tuple(convex_hull(sums)))


def mixed_area(p: MomentPolygon, q: MomentPolygon) -> Fraction:
    """area(p (+) q) - area(p) - area(q), with (+) the Minkowski sum."""
    return area(minkowski_sum(p, q)) - area(p) - area(q)


def width_along(p: MomentPolygon, l: IntVec) -> Fraction:
    vals = [l[0] * x + l[1] * y for x, y in p.vertices]
    return max(vals) - min(vals)


def lattice_width(p: MomentPolygon) -> tuple[Fraction, IntVec]:
    """Minimal directional lattice extent and a minimizing primitive direction.

    The search over primitive directions l is cut off using the inradius
    bound: the width in direction l is at least 2*rho*|l|, where
    rho >= area/perimeter.  The perimeter is over-approximated by the sum of
    l1 edge lengths, which keeps everything rational.
    """
    vs = p.vertices
    n = len(vs)
    perim_ub = sum(
        abs(vs[(i + 1) % n][0] - vs[i][0]) + abs(vs[(i + 1) % n][1] - vs[i][1])
        for i in range(n)
    )
    rho = area(p) / perim_ub
    w1, w2 = width_along(p, (1, 0)), width_along(p, (0, 1))
    best, best_dir = (w1, (1, 0)) if w1 <= w2 else (w2, (0, 1))
    # width(l) >= 2*rho*|l|_2 > best whenever |l|_2^2 > bound_sq, so the
    # enumeration below is exhaustive.
    bound_sq = (best / (2 * rho)) ** 2
    r = math.isqrt(_floor(bound_sq)) + 1
    cands = []
    for a in range(0, r + 1):
        for b in range(-r, r + 1):
            if (a, b) == (0, 0) or (a == 0 and b < 0):
                continue
            if math.gcd(a, abs(b)) != 1 or a * a + b * b > bound_sq:
                continue
            cands.append((a, b))
    cands.sort(key=lambda l: (l[0] ** 2 + l[1] ** 2, abs(l[1]), l[1], l[0]))
    for l in cands:
        w = width_along(p, l)
        if w < best:
            best, best_dir = w, l
    return best, best_dir


def vertex_directions(p: MomentPolygon, i: int) -> tuple[IntVec, IntVec]:
    """Primitive directions of the two edges leaving vertex i:
    (toward next vertex, toward previous vertex)."""
    n = len(p.vertices)
    v = p.vertices[i]
    nxt = p.vertices[(i + 1) % n]
    prv = p.vertices[(i - 1) % n]
    d_next = primitive_direction((nxt[0] - v[0], nxt[1] - v[1]))
    d_prev = primitive_direction((prv[0] - v[0], prv[1] - v[1]))
    return d_next, d_prev


def smooth_vertices(p: MomentPolygon) -> list[int]:
    """Indices of vertices whose primitive edge directions span the lattice."""
    out = []
    for i in range(len(p.vertices)):
        d_next, d_prev = vertex_directions(p, i)
        if abs(det2(d_next, d_prev)) == 1:
            out.append(i)
    return out


def normalize(p: MomentPolygon) -> tuple[MomentPolygon, UnimodularAffineMap]:
    """Move a smooth vertex to the origin with its edges along e1 and e2.

    Returns (T(p), T).  The chosen vertex is the lexicographically smallest
    smooth vertex, which makes the result deterministic.
    """
    smooth = smooth_vertices(p)
    if not smooth:
        raise NoSmoothVertex("polygon has no smooth vertex")
    i = min(smooth, key=lambda j: p.vertices[j])
    v = p.vertices[i]
    d_next, d_prev = vertex_directions(p, i)
    # columns (d_next, d_prev) have determinant +1 at a convex CCW vertex
    a, b = d_next
    c, d = d_prev
    m = ((d, -c), (-b, a))
    t = UnimodularAffineMap(m, (Fraction(0), Fraction(0)))
    shift = t(v)
    t = UnimodularAffineMap(m, (-shift[0], -shift[1]))
    return apply(t, p), t


def corner_chop(p: MomentPolygon, i: int, eps) -> MomentPolygon:
    """Cut the triangle of 'size' eps off vertex i.

    The two new vertices sit eps primitive steps along the incident edges and
    must land strictly inside them.
    """
    eps = frac(eps)
    if eps <= 0:
        raise ChopTooLarge("chop parameter must be positive")
    n = len(p.vertices)
    v = p.vertices[i]
    d_next, d_prev = vertex_directions(p, i)
    for d, other in ((d_next, p.vertices[(i + 1) % n]), (d_prev, p.vertices[(i - 1) % n])):
        step = other[0] - v[0] if d[0] != 0 else other[1] - v[1]
        lam = Fraction(step, d[0]) if d[0] != 0 else Fraction(step, d[1])
        if eps >= lam:
            raise ChopTooLarge("chop does not fit strictly inside the incident edges")
    a = (v[0] + eps * d_prev[0], v[1] + eps * d_prev[1])
    b = (v[0] + eps * d_next[0], v[1] + eps * d_next[1])
    vs = list(p.vertices)
    vs[i:i + 1] = [a, b]
    return MomentPolygon(tuple(vs))


def unit_triangle() -> MomentPolygon:
    return MomentPolygon(((Fraction(0), Fraction(0)), (Fraction(1), Fraction(0)),
                          (Fraction(0), Fraction(1))))


def rectangle(a, b) -> MomentPolygon:
    a, b = frac(a), frac(b)
    return MomentPolygon(((Fraction(0), Fraction(0)), (a, Fraction(0)), (a, b),
                          (Fraction(0), b)))


def triangle(a, b) -> MomentPolygon:
    """Right triangle with legs a (along x) and b (along y)."""
    a, b = frac(a), frac(b)
    return MomentPolygon(((Fraction(0), Fraction(0)), (a, Fraction(0)),
                          (Fraction(0), b)))
