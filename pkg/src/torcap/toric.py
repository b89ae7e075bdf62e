"""The polygon-to-surface dictionary.

Complete fans in the plane, torus-invariant divisors, exact intersection
numbers on simplicial surfaces, nef/ample tests, section counts, the
isoparametric transform, the preferable-nef procedure, blow-downs and smooth
resolution by ray insertion.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

from .errors import (
    IterationLimit,
    NotContractible,
    NotEffective,
    NotInSW,
    SingularSurfaceChi,
)
from .lattice import (
    MomentPolygon,
    Point,
    convex_hull,
    count_in_halfplanes,
    det2,
    frac,
    halfplane_vertices,
    primitive,
)

IP_ITERATION_CAP = 10_000


@dataclass(frozen=True)
class ToricSurface:
    """Complete simplicial fan in the plane, given by its rays.

    Rays are primitive integer vectors in strictly counterclockwise cyclic
    order; each adjacent pair spans a cone with positive determinant.
    """

    rays: tuple[tuple[int, int], ...]
    polygon: Optional[MomentPolygon] = None

    def __post_init__(self):
        if len(self.rays) < 3:
            raise ValueError("a complete fan needs at least 3 rays")
        for v in self.rays:
            if primitive(v) != v:
                raise ValueError(f"ray {v} is not primitive")
        if len(set(self.rays)) != len(self.rays):
            raise ValueError("duplicate rays")
        for i in range(len(self.rays)):
            if det2(self.rays[i], self.rays[(i + 1) % len(self.rays)]) <= 0:
                raise ValueError("rays must be strictly counterclockwise and complete")

    def __len__(self) -> int:
        return len(self.rays)

    @property
    def cone_dets(self) -> tuple[int, ...]:
        n = len(self.rays)
        return tuple(det2(self.rays[i], self.rays[(i + 1) % n]) for i in range(n))

    @property
    def smooth(self) -> bool:
        return all(d == 1 for d in self.cone_dets)


@dataclass(frozen=True)
class TorusDivisor:
    """Torus-invariant divisor, one rational coefficient per ray."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(frac(c) for c in self.coeffs))

    @property
    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def __add__(self, other: "TorusDivisor") -> "TorusDivisor":
        return TorusDivisor(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "TorusDivisor") -> "TorusDivisor":
        return TorusDivisor(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __rmul__(self, s) -> "TorusDivisor":
        s = frac(s)
        return TorusDivisor(tuple(s * c for c in self.coeffs))

    def __neg__(self) -> "TorusDivisor":
        return TorusDivisor(tuple(-c for c in self.coeffs))


@dataclass(frozen=True)
class DivisorClass:
    """Divisor modulo linear functions, as a canonical coset representative
    (the unique representative vanishing on the first two rays)."""

    rep: tuple[Fraction, ...]


def build_surface(p: MomentPolygon) -> ToricSurface:
    """Surface of the inner normal fan of p."""
    rays = tuple(u for (u, _a) in p.edge_data())
    return ToricSurface(rays, polygon=p)


def associated_divisor(p: MomentPolygon) -> TorusDivisor:
    """Ample boundary divisor with support numbers read off p's edges."""
    return TorusDivisor(tuple(a for (_u, a) in p.edge_data()))


def canonical_divisor(y: ToricSurface) -> TorusDivisor:
    return TorusDivisor(tuple(Fraction(-1) for _ in y.rays))


def divisor(y: ToricSurface, coeffs: Sequence) -> TorusDivisor:
    if len(coeffs) != len(y.rays):
        raise ValueError("coefficient count must match ray count")
    return TorusDivisor(tuple(frac(c) for c in coeffs))


def prime_divisor(y: ToricSurface, i: int) -> TorusDivisor:
    return TorusDivisor(tuple(Fraction(1 if j == i else 0) for j in range(len(y.rays))))


def ray_self_intersection(y: ToricSurface, i: int) -> Fraction:
    """Self-intersection of the boundary divisor of ray i."""
    n = len(y.rays)
    vp, v, vn = y.rays[(i - 1) % n], y.rays[i], y.rays[(i + 1) % n]
    return Fraction(-det2(vp, vn), det2(vp, v) * det2(v, vn))


@lru_cache(maxsize=None)
def intersection_matrix(y: ToricSurface) -> tuple[tuple[Fraction, ...], ...]:
    """Pairings D_i . D_j of the boundary divisors.

    Adjacent rays meet in 1/det of their cone, non-adjacent boundary divisors
    are disjoint, and self-intersections come from the two adjacent cones.
    """
    n = len(y.rays)
    q = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        j = (i + 1) % n
        val = Fraction(1, det2(y.rays[i], y.rays[j]))
        q[i][j] += val
        q[j][i] += val
    for i in range(n):
        q[i][i] = ray_self_intersection(y, i)
    return tuple(tuple(row) for row in q)


def intersect(y: ToricSurface, d1: TorusDivisor, d2: TorusDivisor) -> Fraction:
    q = intersection_matrix(y)
    n = len(y.rays)
    total = Fraction(0)
    for i in range(n):
        a = d1.coeffs[i]
        if a == 0:
            continue
        row = q[i]
        for j in range(n):
            b = d2.coeffs[j]
            if b != 0 and row[j] != 0:
                total += a * b * row[j]
    return total


def index(y: ToricSurface, d: TorusDivisor) -> Fraction:
    """D . (D - K)."""
    return intersect(y, d, d - canonical_divisor(y))


def chi(y: ToricSurface, d: TorusDivisor) -> Fraction:
    """Euler characteristic of the divisor sheaf.

    Smooth surfaces use the index formula chi = 1 + I/2; on singular
    surfaces only nef divisors are supported (via the lattice point count).
    """
    if y.smooth:
        return 1 + index(y, d) / 2
    if is_nef(y, d):
        return Fraction(h0(y, d))
    raise SingularSurfaceChi("chi of a non-nef divisor on a singular surface")


def divisor_constraints(y: ToricSurface, d: TorusDivisor) -> list[tuple[int, int, Fraction]]:
    """Half-plane description of the section polytope P_D:
    <ray_i, x> >= -a_i."""
    return [(v[0], v[1], -a) for v, a in zip(y.rays, d.coeffs)]


def support_vertices(y: ToricSurface, d: TorusDivisor) -> list[Point]:
    """Corner points of the section polytope (may be 0, 1 or 2 dimensional)."""
    pts = halfplane_vertices(divisor_constraints(y, d))
    if len(pts) >= 3:
        hull = convex_hull(pts)
        if len(hull) >= 3:
            return hull
        return sorted(pts)
    return sorted(pts)


def support_polytope(y: ToricSurface, d: TorusDivisor) -> Optional[MomentPolygon]:
    """Section polytope as a polygon; None when empty or lower dimensional."""
    pts = support_vertices(y, d)
    if len(pts) < 3:
        return None
    return MomentPolygon(tuple(pts))


def h0(y: ToricSurface, d: TorusDivisor) -> int:
    """Number of lattice points in the section polytope."""
    pts = support_vertices(y, d)
    if not pts:
        return 0
    ys = [p[1] for p in pts]
    return count_in_halfplanes(
        divisor_constraints(y, d), math.ceil(min(ys)), math.floor(max(ys))
    )


def nef_certificate(y: ToricSurface, d: TorusDivisor) -> Optional[list[Point]]:
    """Per-cone linearizations of the support function, or None if not nef.

    For each adjacent ray pair the unique m with <m, v_i> = -a_i,
    <m, v_{i+1}> = -a_{i+1} must satisfy every other support inequality;
    this is exactly convexity of the piecewise-linear support function.
    """
    n = len(y.rays)
    cons = divisor_constraints(y, d)
    ms: list[Point] = []
    for i in range(n):
        vi, vj = y.rays[i], y.rays[(i + 1) % n]
        ai, aj = d.coeffs[i], d.coeffs[(i + 1) % n]
        det = det2(vi, vj)
        mx = Fraction(-ai * vj[1] + aj * vi[1], det)
        my = Fraction(-aj * vi[0] + ai * vj[0], det)
        for ux, uy, c in cons:
            if ux * mx + uy * my < c:
                return None
        ms.append((mx, my))
    return ms


def is_nef(y: ToricSurface, d: TorusDivisor) -> bool:
    return nef_certificate(y, d) is not None


def is_ample(y: ToricSurface, d: TorusDivisor) -> bool:
    """Nef with strictly convex support function (normal fan equals the fan)."""
    ms = nef_certificate(y, d)
    if ms is None:
        return False
    n = len(ms)
    return all(ms[i] != ms[(i + 1) % n] for i in range(n))


def is_effective(y: ToricSurface, d: TorusDivisor) -> bool:
    """True iff the class of d has an effective representative.

    Torus-invariant prime divisors generate the effective cone, so d is
    effective iff some shift by a linear function is coefficient-wise >= 0,
    i.e. iff the section polytope contains a lattice point (integral d).
    """
    if not d.is_integral:
        raise ValueError("effectivity test expects an integral divisor")
    return h0(y, d) >= 1


def linear_shift(y: ToricSurface, m: Sequence) -> TorusDivisor:
    """Divisor of the character with exponent m: coefficients <m, ray_i>."""
    mx, my = frac(m[0]), frac(m[1])
    return TorusDivisor(tuple(mx * v[0] + my * v[1] for v in y.rays))


def divisor_class(y: ToricSurface, d: TorusDivisor) -> DivisorClass:
    """Canonical coset representative vanishing on the first two rays."""
    v0, v1 = y.rays[0], y.rays[1]
    a0, a1 = d.coeffs[0], d.coeffs[1]
    det = det2(v0, v1)
    mx = Fraction(-a0 * v1[1] + a1 * v0[1], det)
    my = Fraction(-a1 * v0[0] + a0 * v1[0], det)
    shift = linear_shift(y, (mx, my))
    return DivisorClass((d + shift).coeffs)


def polytope_divisor(y: ToricSurface, p: MomentPolygon) -> TorusDivisor:
    """Divisor with support numbers of the polygon p on y's fan.

    Always nef; ample iff y's fan is the inner normal fan of p.
    """
    coeffs = []
    for v in y.rays:
        coeffs.append(-min(v[0] * x + v[1] * y_ for (x, y_) in p.vertices))
    return TorusDivisor(tuple(coeffs))


def ip_transform(y: ToricSurface, d: TorusDivisor) -> TorusDivisor:
    """One step of the isoparametric transform.

    Subtracts ceil((D.C)/(C.C)) times each boundary curve C meeting D
    negatively.  Requires a smooth surface and an effective integral divisor.
    """
    if not y.smooth:
        raise ValueError("isoparametric transform needs a smooth surface")
    if not d.is_integral:
        raise ValueError("isoparametric transform needs an integral divisor")
    if not is_effective(y, d):
        raise NotEffective("divisor has no sections")
    out = list(d.coeffs)
    for i in range(len(y.rays)):
        di = prime_divisor(y, i)
        pairing = intersect(y, d, di)
        if pairing < 0:
            self_int = ray_self_intersection(y, i)
            if self_int >= 0:
                raise NotEffective("negative pairing with a non-negative curve")
            m = math.ceil(pairing / self_int)
            out[i] -= m
    return TorusDivisor(tuple(out))


def iterate_ip(y: ToricSurface, d: TorusDivisor, cap: int = IP_ITERATION_CAP) -> TorusDivisor:
    """Iterate the isoparametric transform until the divisor is nef."""
    for _ in range(cap):
        if is_nef(y, d):
            return d
        d = ip_transform(y, d)
    raise IterationLimit("isoparametric transform did not stabilize")


def _minus_one_rays(y: ToricSurface) -> list[int]:
    return [i for i in range(len(y.rays)) if ray_self_intersection(y, i) == -1]


def preferable_nef(y: ToricSurface, d: TorusDivisor) -> TorusDivisor:
    """Nef integral divisor that is area- and index-preferable to d.

    d must be effective with nonnegative index.  Contractible boundary
    curves met non-positively are blown down (pulling the recursive result
    back); otherwise the isoparametric transform is iterated.
    """
    if not y.smooth:
        raise ValueError("preferable-nef procedure needs a smooth surface")
    if not d.is_integral or not is_effective(y, d) or index(y, d) < 0:
        raise NotInSW("divisor is not effective with nonnegative index")
    return _preferable_nef(y, d)


def _preferable_nef(y: ToricSurface, d: TorusDivisor) -> TorusDivisor:
    for _ in range(IP_ITERATION_CAP):
        if is_nef(y, d):
            return d
        neg = None
        for i in _minus_one_rays(y):
            if intersect(y, d, prime_divisor(y, i)) <= 0:
                neg = i
                break
        if neg is not None:
            yb = blow_down(y, neg)
            db = TorusDivisor(tuple(c for j, c in enumerate(d.coeffs) if j != neg))
            db0 = _preferable_nef(yb, db)
            return pullback_through_blow_down(y, neg, db0)
        d = ip_transform(y, d)
    raise IterationLimit("preferable-nef procedure did not terminate")


def blow_down(y: ToricSurface, i: int) -> ToricSurface:
    """Contract the boundary curve of ray i (a (-1)-curve between smooth cones)."""
    n = len(y.rays)
    if ray_self_intersection(y, i) != -1:
        raise NotContractible("self-intersection is not -1")
    if det2(y.rays[(i - 1) % n], y.rays[i]) != 1 or det2(y.rays[i], y.rays[(i + 1) % n]) != 1:
        raise NotContractible("adjacent cones are not smooth")
    rays = tuple(v for j, v in enumerate(y.rays) if j != i)
    return ToricSurface(rays)


def pullback_through_blow_down(y: ToricSurface, i: int, d_down: TorusDivisor) -> TorusDivisor:
    """Pull a divisor on the blow-down of ray i back to y.

    The coefficient on the exceptional ray is forced by linearity of the
    support function on the merged cone: rays[i] = rays[i-1] + rays[i+1].
    """
    n = len(y.rays)
    down = [j for j in range(n) if j != i]
    coeffs = [Fraction(0)] * n
    for pos, j in enumerate(down):
        coeffs[j] = d_down.coeffs[pos]
    coeffs[i] = coeffs[(i - 1) % n] + coeffs[(i + 1) % n]
    return TorusDivisor(tuple(coeffs))


def round_down_nef(y: ToricSurface, d: TorusDivisor) -> TorusDivisor:
    """Integral nef divisor with the same lattice point count and no larger
    pairing against any ample divisor.

    Floors the coefficients, then pushes every slack hyperplane inward until
    it meets a lattice point of the section polytope.
    """
    if not is_nef(y, d):
        raise ValueError("round-down expects a nef divisor")
    floored = TorusDivisor(tuple(Fraction(math.floor(c)) for c in d.coeffs))
    pts = _lattice_points(y, floored)
    if not pts:
        raise ValueError("section polytope contains no lattice point")
    coeffs = tuple(
        Fraction(-min(v[0] * x + v[1] * yy for (x, yy) in pts)) for v in y.rays
    )
    return TorusDivisor(coeffs)


def _lattice_points(y: ToricSurface, d: TorusDivisor) -> list[tuple[int, int]]:
    pts = support_vertices(y, d)
    if not pts:
        return []
    cons = divisor_constraints(y, d)
    ys = [p[1] for p in pts]
    xs = [p[0] for p in pts]
    out = []
    for yy in range(math.ceil(min(ys)), math.floor(max(ys)) + 1):
        for xx in range(math.ceil(min(xs)), math.floor(max(xs)) + 1):
            if all(ux * xx + uy * yy >= c for ux, uy, c in cons):
                out.append((xx, yy))
    return out


def resolve(y: ToricSurface) -> ToricSurface:
    """Smooth surface whose fan refines y's, by ray insertion.

    In every singular cone the unique primitive w in the cone with
    det(u, w) = 1 against the left generator is inserted; the residual cone
    has strictly smaller determinant, so this terminates with all cones
    unimodular.
    """
    rays = list(y.rays)
    changed = True
    while changed:
        changed = False
        out = []
        n = len(rays)
        for i in range(n):
            u, v = rays[i], rays[(i + 1) % n]
            out.append(u)
            d = det2(u, v)
            if d > 1:
                out.append(_hj_insert(u, v))
                changed = True
        rays = out
    return ToricSurface(tuple(rays), polygon=y.polygon)


def _hj_insert(u: tuple[int, int], v: tuple[int, int]) -> tuple[int, int]:
    """Primitive w inside cone(u, v) with det(u, w) = 1 and det(w, v) minimal."""
    # solve det(u, w0) = u0*wy - u1*wx = 1
    _g, s, t = _egcd(u[0], -u[1])
    # u0*s + (-u1)*t = 1, so w0 = (t, s) has det(u, w0) = 1
    w0 = (t, s)
    d = det2(u, v)
    c = det2(w0, v)
    # w = w0 + k*u keeps det(u, w) = 1 and has det(w, v) = c + k*d;
    # the smallest positive value puts w inside the cone
    k = math.ceil(Fraction(1 - c, d))
    w = (w0[0] + k * u[0], w0[1] + k * u[1])
    return primitive(w)


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    if b == 0:
        return (abs(a), 1 if a >= 0 else -1, 0)
    g, x, y = _egcd(b, a % b)
    return (g, y, x - (a // b) * y)
