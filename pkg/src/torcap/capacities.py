"""Capacity sequences and embedding obstructions.

Algebraic capacities of polarized toric surfaces, ECH capacities of
ellipsoids and of convex and concave toric domains, embedding verdicts,
the Xi-width and the lattice width bound.  All values are exact rationals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from . import lattice, toric
from .errors import IterationLimit, NoSmoothVertex, NotConcave, NotDomainPolygon
from .lattice import MomentPolygon, frac
from .toric import TorusDivisor

ALG = "alg"
ECH_ELLIPSOID = "ech-ellipsoid"
ECH_CONVEX = "ech-convex"
ECH_CONCAVE = "ech-concave"

WEIGHT_EXPANSION_CAP = 100_000


@dataclass(frozen=True)
class CapacitySequence:
    """Capacities c_0, c_1, ..., tagged with how they were computed."""

    values: tuple[Fraction, ...]
    kind: str

    def __getitem__(self, k: int) -> Fraction:
        return self.values[k]

    def __len__(self) -> int:
        return len(self.values)


def calg(p: MomentPolygon, k: int) -> Fraction:
    """k-th algebraic capacity of the surface polarized by p."""
    return calg_witness(p, k)[0]


def calg_witness(p: MomentPolygon, k: int) -> tuple[Fraction, TorusDivisor]:
    """Capacity together with an optimal nef divisor.

    The witness is the coefficient-wise lexicographically smallest nonnegative
    integral nef divisor with at least k+1 sections minimizing the pairing
    with the polarization.
    """
    if k < 0:
        raise ValueError("capacity index must be nonnegative")
    val, coeffs = _ensure_table(p, k)[k]
    return val, TorusDivisor(tuple(Fraction(c) for c in coeffs))


def _nef_h0(rays, dets, coeffs: tuple[int, ...]) -> Optional[int]:
    """Section count of an integral divisor if it is nef, else None.

    Integer-only inner loop; for a nef divisor the per-cone linearizations
    are exactly the vertices of the section polytope, which bounds the count.
    """
    n = len(rays)
    ms = []
    for i in range(n):
        j = (i + 1) % n
        vi, vj = rays[i], rays[j]
        d = dets[i]
        mx = -coeffs[i] * vj[1] + coeffs[j] * vi[1]
        my = -coeffs[j] * vi[0] + coeffs[i] * vj[0]
        for l in range(n):
            vl = rays[l]
            if vl[0] * mx + vl[1] * my < -d * coeffs[l]:
                return None
        ms.append((my, d))
    y_lo = min(-((-my) // d) for my, d in ms)
    y_hi = max(my // d for my, d in ms)
    total = 0
    for yy in range(y_lo, y_hi + 1):
        lo, hi = None, None
        empty = False
        for (vx, vy), ai in zip(rays, coeffs):
            rhs = -ai - vy * yy
            if vx > 0:
                b = -((-rhs) // vx)
                if lo is None or b > lo:
                    lo = b
            elif vx < 0:
                b = rhs // vx
                if hi is None or b < hi:
                    hi = b
            elif rhs > 0:
                empty = True
                break
        if not empty and hi >= lo:
            total += hi - lo + 1
    return total


_TABLES: dict[MomentPolygon, list[tuple[Fraction, tuple[int, ...]]]] = {}
# per-polygon memo of _nef_h0 results keyed by coefficient vector, so the
# growing-horizon recomputations never re-evaluate a vector
_NEF_MEMO: dict[MomentPolygon, dict[tuple[int, ...], Optional[int]]] = {}


def _ensure_table(p: MomentPolygon, k: int) -> list[tuple[Fraction, tuple[int, ...]]]:
    """Capacity table of p covering index k, grown geometrically so that
    sweeping k upward costs little more than the largest single query."""
    table = _TABLES.get(p)
    if table is not None and k < len(table):
        return table
    target = k if table is None else max(k, 2 * (len(table) - 1))
    table = _compute_table(p, target)
    _TABLES[p] = table
    return table


def _compute_table(p: MomentPolygon, k_max: int) -> list[tuple[Fraction, tuple[int, ...]]]:
    """(value, witness vector) for every capacity index up to k_max.

    One bounded enumeration serves all indices at once: every nonnegative
    integral vector whose pairing stays below the k_max incumbent is
    evaluated, and each feasible vector updates all indices its section
    count covers.
    """
    y = toric.build_surface(p)
    n = len(y.rays)
    ample = toric.associated_divisor(p)
    q = toric.intersection_matrix(y)
    # pairing of each boundary divisor with the polarization; positive by
    # ampleness, so the objective is a positive linear form
    weights = tuple(
        sum(q[i][j] * ample.coeffs[j] for j in range(n)) for i in range(n)
    )
    assert all(w > 0 for w in weights)
    denom = 1
    for w in weights:
        denom = denom * w.denominator // math.gcd(denom, w.denominator)
    iweights = tuple(int(w * denom) for w in weights)

    # value bound: integral multiples of the polarization are nef with as
    # many sections as needed
    scale = 1
    for c in ample.coeffs:
        scale = scale * c.denominator // math.gcd(scale, c.denominator)
    base = tuple(scale * c for c in ample.coeffs)
    m = 1
    while toric.h0(y, TorusDivisor(tuple(m * c for c in base))) < k_max + 1:
        m += 1
    bound = sum(int(m * base[i]) * iweights[i] for i in range(n))

    # minimizing over nonnegative integral coefficient vectors is exhaustive:
    # any optimal nef divisor has a section, hence a representative whose
    # section polytope contains the origin, i.e. nonnegative coefficients
    best: list[Optional[tuple[int, tuple[int, ...]]]] = [None] * (k_max + 1)
    coeffs = [0] * n
    rays = y.rays
    dets = tuple(toric.det2(rays[i], rays[(i + 1) % n]) for i in range(n))
    # only nef vectors are memoized; the far more numerous non-nef ones are
    # cheap to re-reject and would dominate memory
    memo = _NEF_MEMO.setdefault(p, {})

    def search(i: int, partial: int) -> None:
        nonlocal bound
        if i == n:
            key = tuple(coeffs)
            h = memo.get(key)
            if h is None:
                h = _nef_h0(rays, dets, key)
                if h is None:
                    return
                memo[key] = h
            cand = (partial, key)
            if h > k_max and partial < bound:
                # feasible at the top index: nothing more expensive can
                # improve any entry of the table
                bound = partial
            # the per-index optima are nondecreasing, so stop at the first
            # index this candidate does not improve
            for k in range(min(h - 1, k_max), -1, -1):
                if best[k] is None or cand < best[k]:
                    best[k] = cand
                else:
                    break
            return
        c = 0
        w = iweights[i]
        while partial + c * w <= bound:
            coeffs[i] = c
            search(i + 1, partial + c * w)
            c += 1
        coeffs[i] = 0

    search(0, 0)
    if any(entry is None for entry in best):
        # cannot happen: shifting an optimal divisor so that its section
        # polytope contains the origin lands inside the search region
        raise IterationLimit("no nonnegative optimal vector found")
    return [(Fraction(v, denom), vec) for v, vec in best]


def alg_capacities(p: MomentPolygon, k_max: int) -> CapacitySequence:
    return CapacitySequence(tuple(calg(p, k) for k in range(k_max + 1)), ALG)


def ech_ellipsoid(a, b, k: int) -> Fraction:
    """k-th ECH capacity of the ellipsoid with areas a, b: the (k+1)-th
    smallest value of a*m + b*n over nonnegative integers m, n."""
    a, b = frac(a), frac(b)
    if a <= 0 or b <= 0 or k < 0:
        raise ValueError("ellipsoid needs positive areas and k >= 0")
    # the k+1 smallest values all have m + n <= k: below a value with
    # m + n > k sit the (m+1)(m+2)/2-ish values of its lower staircase
    vals = sorted(
        a * m + b * n_ for m in range(k + 1) for n_ in range(k + 1 - m)
    )
    return vals[k]


def ech_ellipsoid_capacities(a, b, k_max: int) -> CapacitySequence:
    a, b = frac(a), frac(b)
    vals = sorted(
        a * m + b * n for m in range(k_max + 1) for n in range(k_max + 1 - m)
    )
    return CapacitySequence(tuple(vals[: k_max + 1]), ECH_ELLIPSOID)


def is_domain_polygon(p: MomentPolygon) -> bool:
    """True iff p sits in the first quadrant with the origin as a vertex and
    its two incident edges along the axes."""
    if any(x < 0 or y < 0 for (x, y) in p.vertices):
        return False
    if p.vertices[0] != (0, 0):
        return False
    d_next, d_prev = lattice.vertex_directions(p, 0)
    return d_next == (1, 0) and d_prev == (0, 1)


def ech_convex(p: MomentPolygon, k: int) -> Fraction:
    """k-th ECH capacity of the convex toric domain over p.

    Agrees with the algebraic capacity of the associated polarized surface.
    """
    if not is_domain_polygon(p):
        raise NotDomainPolygon("convex toric domain needs an origin corner with axis edges")
    return calg(p, k)


def ech_convex_capacities(p: MomentPolygon, k_max: int) -> CapacitySequence:
    if not is_domain_polygon(p):
        raise NotDomainPolygon("convex toric domain needs an origin corner with axis edges")
    return CapacitySequence(tuple(calg(p, k) for k in range(k_max + 1)), ECH_CONVEX)


@dataclass(frozen=True)
class ConcaveDomain:
    """Toric domain under a convex decreasing piecewise linear graph.

    The chain runs from (0, b) on the y axis to (a, 0) on the x axis with
    strictly increasing x, strictly decreasing y and strictly increasing
    slopes; the domain is the region between the chain and the axes.
    """

    chain: tuple[lattice.Point, ...]

    def __post_init__(self):
        pts = tuple((frac(x), frac(y)) for x, y in self.chain)
        if len(pts) < 2:
            raise NotConcave("chain needs at least two vertices")
        if pts[0][0] != 0 or pts[0][1] <= 0:
            raise NotConcave("chain must start on the positive y axis")
        if pts[-1][1] != 0 or pts[-1][0] <= 0:
            raise NotConcave("chain must end on the positive x axis")
        for (x1, y1), (x2, y2) in zip(pts, pts[1:]):
            if x2 <= x1 or y2 >= y1:
                raise NotConcave("chain must move strictly right and down")
        for i in range(len(pts) - 2):
            e1 = (pts[i + 1][0] - pts[i][0], pts[i + 1][1] - pts[i][1])
            e2 = (pts[i + 2][0] - pts[i + 1][0], pts[i + 2][1] - pts[i + 1][1])
            if lattice.det2(e1, e2) <= 0:
                raise NotConcave("chain slopes must strictly increase")
        object.__setattr__(self, "chain", pts)

    @classmethod
    def ellipsoid(cls, a, b) -> "ConcaveDomain":
        a, b = frac(a), frac(b)
        return cls(((Fraction(0), b), (a, Fraction(0))))

    @classmethod
    def ball(cls, c) -> "ConcaveDomain":
        return cls.ellipsoid(c, c)


@lru_cache(maxsize=None)
def concave_weights(omega: ConcaveDomain) -> tuple[Fraction, ...]:
    """Weight expansion: ball areas of the standard triangle decomposition.

    Repeatedly carves out the largest triangle with legs on the axes and
    shears the two leftover corners back into concave position.
    """
    out: list[Fraction] = []
    stack = [omega.chain]
    for _ in range(WEIGHT_EXPANSION_CAP):
        if not stack:
            return tuple(out)
        chain = stack.pop()
        r = min(x + y for (x, y) in chain)
        out.append(r)
        touching = [i for i, (x, y) in enumerate(chain) if x + y == r]
        i_first, i_last = touching[0], touching[-1]
        # leftover above the cut, sheared so the cut line becomes the x axis
        if i_first > 0:
            upper = tuple((x, x + y - r) for (x, y) in chain[: i_first + 1])
            stack.append(upper)
        # leftover right of the cut, sheared onto the y axis
        if i_last < len(chain) - 1:
            lower = tuple((x + y - r, y) for (x, y) in chain[i_last:])
            stack.append(lower)
    raise IterationLimit("weight expansion did not terminate")


def ech_concave(omega: ConcaveDomain, k: int) -> Fraction:
    return ech_concave_capacities(omega, k).values[k]


@lru_cache(maxsize=None)
def ech_concave_capacities(omega: ConcaveDomain, k_max: int) -> CapacitySequence:
    """ECH capacities of a concave toric domain.

    The domain decomposes into balls with the weight expansion areas, and
    the capacity sequence of a disjoint union is the max-plus convolution
    of the summands' sequences.
    """
    ball_seq = [ech_ellipsoid(1, 1, k) for k in range(k_max + 1)]
    acc = [Fraction(0)] * (k_max + 1)
    for w in concave_weights(omega):
        scaled = [w * v for v in ball_seq]
        acc = [
            max(acc[j] + scaled[k - j] for j in range(k + 1))
            for k in range(k_max + 1)
        ]
    return CapacitySequence(tuple(acc), ECH_CONCAVE)


def _require_smooth_vertex(p: MomentPolygon) -> None:
    """Embedding comparisons need a smooth fixed point on the target."""
    if not lattice.smooth_vertices(p):
        raise NoSmoothVertex("target polygon has no smooth vertex")


@dataclass(frozen=True)
class EmbeddingVerdict:
    """Outcome of the capacity comparison for embedding a concave domain
    into a polarized toric surface."""

    compatible: bool
    k_max: int
    first_violation: Optional[int] = None
    domain_capacity: Optional[Fraction] = None
    target_capacity: Optional[Fraction] = None


def embedding_verdict(omega: ConcaveDomain, p: MomentPolygon, k_max: int) -> EmbeddingVerdict:
    """Compare ECH capacities of the domain with algebraic capacities of the
    target for k = 1..k_max.

    Any index where the domain capacity exceeds the target capacity rules
    the embedding out; otherwise the test is passed (which does not by
    itself construct an embedding).
    """
    if k_max < 1:
        raise ValueError("k_max must be at least 1")
    _require_smooth_vertex(p)
    dom = ech_concave_capacities(omega, k_max)
    for k in range(1, k_max + 1):
        target = calg(p, k)
        if dom[k] > target:
            return EmbeddingVerdict(
                compatible=False,
                k_max=k_max,
                first_violation=k,
                domain_capacity=dom[k],
                target_capacity=target,
            )
    return EmbeddingVerdict(compatible=True, k_max=k_max)


@dataclass(frozen=True)
class XiWidth:
    """Best capacity ratio bound for scaling a concave domain into a target."""

    value: Fraction
    argmin_k: int
    k_max: int
    stable: bool


def xi_width(p: MomentPolygon, omega: ConcaveDomain, k_max: int) -> XiWidth:
    """min over 1 <= k <= k_max of calg(p, k) / c_k(omega).

    The largest s with s*omega passing the capacity test is this minimum.
    The stable flag records that the minimizer already appears in the first
    half of the horizon, a heuristic sign the value has converged.
    """
    if k_max < 1:
        raise ValueError("k_max must be at least 1")
    _require_smooth_vertex(p)
    dom = ech_concave_capacities(omega, k_max)
    best: Optional[Fraction] = None
    argmin = 0
    for k in range(1, k_max + 1):
        if dom[k] <= 0:
            continue
        ratio = calg(p, k) / dom[k]
        if best is None or ratio < best:
            best, argmin = ratio, k
    if best is None:
        raise ValueError("domain has no positive capacity up to k_max")
    stable = argmin <= max(1, k_max // 2)
    return XiWidth(value=best, argmin_k=argmin, k_max=k_max, stable=stable)


def gromov_width_bound(p: MomentPolygon, k_max: int) -> XiWidth:
    """Upper bound for the Gromov width via the ball capacity ratios."""
    return xi_width(p, ConcaveDomain.ball(1), k_max)


def width_bound_check(p: MomentPolygon, k_max: int) -> tuple[Fraction, Fraction, bool]:
    """(Gromov width bound, lattice width, bound holds).

    The capacity bound for balls never exceeds the lattice width of the
    moment polygon; the boolean reports this comparison for the horizon.
    """
    gw = gromov_width_bound(p, k_max).value
    lw, _direction = lattice.lattice_width(p)
    return gw, lw, gw <= lw
