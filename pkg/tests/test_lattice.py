import random
from fractions import Fraction

import pytest

from conftest import random_lattice_polygon, random_unimodular
from torcap import lattice
from torcap.errors import ChopTooLarge, NoSmoothVertex, NotConvex, ZeroArea
from torcap.lattice import MomentPolygon, UnimodularAffineMap


def test_canonical_vertex_rotation():
    p = MomentPolygon(((1, 0), (0, 1), (0, 0)))
    assert p.vertices[0] == (0, 0)
    q = MomentPolygon(((0, 0), (1, 0), (0, 1)))
    assert p == q


def test_rejects_clockwise():
    with pytest.raises(NotConvex):
        MomentPolygon(((0, 0), (0, 1), (1, 0)))


def test_rejects_collinear_triple():
    with pytest.raises(NotConvex):
        MomentPolygon(((0, 0), (1, 0), (2, 0), (0, 1)))


def test_rejects_degenerate():
    with pytest.raises(ZeroArea):
        MomentPolygon(((0, 0), (1, 1), (2, 2)))


def test_rejects_nonconvex():
    with pytest.raises(NotConvex):
        MomentPolygon(((0, 0), (3, 0), (1, 1), (3, 3), (0, 3)))


def test_edge_data_unit_square():
    p = lattice.rectangle(1, 1)
    assert p.edge_data() == [
        ((0, 1), Fraction(0)),
        ((-1, 0), Fraction(1)),
        ((0, -1), Fraction(1)),
        ((1, 0), Fraction(0)),
    ]


def test_area_scaling():
    t = lattice.unit_triangle()
    assert lattice.area(t) == Fraction(1, 2)
    assert lattice.area(lattice.scale(t, 3)) == Fraction(9, 2)
    assert lattice.area(lattice.scale(t, Fraction(1, 2))) == Fraction(1, 8)


def test_lattice_count_known():
    assert lattice.lattice_count(lattice.unit_triangle()) == 3
    assert lattice.lattice_count(lattice.rectangle(2, 3)) == 12
    assert lattice.lattice_count(lattice.triangle(1, 2)) == 4
    half = MomentPolygon(((0, 0), (Fraction(3, 2), 0), (0, Fraction(3, 2))))
    assert lattice.lattice_count(half) == 3


def _brute_count(p):
    xs = [v[0] for v in p.vertices]
    ys = [v[1] for v in p.vertices]
    total = 0
    for x in range(-6, 7):
        for y in range(-6, 7):
            assert min(xs) >= -6 and max(xs) <= 6
            if lattice.contains_point(p, (x, y)):
                total += 1
    return total


def test_lattice_count_random_against_pointwise_scan():
    rng = random.Random(11)
    for _ in range(40):
        p = random_lattice_polygon(rng, size=5)
        assert lattice.lattice_count(p) == _brute_count(p)


def test_pick_formula_on_random_lattice_polygons():
    rng = random.Random(12)
    for _ in range(40):
        p = random_lattice_polygon(rng, size=5)
        a = lattice.area(p)
        b = lattice.boundary_lattice_count(p)
        assert lattice.lattice_count(p) == a + Fraction(b, 2) + 1


def test_unimodular_map_roundtrip():
    rng = random.Random(13)
    for _ in range(25):
        t = random_unimodular(rng)
        inv = t.inverse()
        for pt in ((0, 0), (3, -2), (Fraction(1, 2), Fraction(5, 3))):
            q = t((Fraction(pt[0]), Fraction(pt[1])))
            assert inv(q) == (Fraction(pt[0]), Fraction(pt[1]))
        comp = t.compose(inv)
        assert comp.m == ((1, 0), (0, 1))
        assert comp.t == (0, 0)


def test_apply_preserves_area_and_count():
    rng = random.Random(14)
    for _ in range(25):
        p = random_lattice_polygon(rng, size=4)
        t = random_unimodular(rng)
        q = lattice.apply(t, p)
        assert lattice.area(q) == lattice.area(p)
        assert lattice.lattice_count(q) == lattice.lattice_count(p)


def test_minkowski_and_mixed_area():
    s = lattice.rectangle(1, 1)
    assert lattice.mixed_area(s, s) == 2 * lattice.area(s)
    t = lattice.unit_triangle()
    assert lattice.mixed_area(s, t) == lattice.mixed_area(t, s)
    assert lattice.mixed_area(lattice.scale(s, 3), t) == 3 * lattice.mixed_area(s, t)
    assert lattice.mixed_area(lattice.scale(t, 2), t) == 2
    assert lattice.mixed_area(s, lattice.rectangle(2, 3)) == 5


def test_width_along():
    p = lattice.rectangle(2, 3)
    assert lattice.width_along(p, (1, 0)) == 2
    assert lattice.width_along(p, (0, 1)) == 3
    assert lattice.width_along(p, (1, 1)) == 5


def test_lattice_width_known():
    assert lattice.lattice_width(lattice.rectangle(2, 3)) == (2, (1, 0))
    assert lattice.lattice_width(lattice.rectangle(1, 5)) == (1, (1, 0))
    w, d = lattice.lattice_width(lattice.unit_triangle())
    assert w == 1
    # a thin sheared strip is only narrow in a non-axis direction
    sheared = lattice.apply(
        UnimodularAffineMap(((1, 0), (5, 1)), (0, 0)), lattice.rectangle(1, 5)
    )
    w, d = lattice.lattice_width(sheared)
    assert w == 1 and lattice.width_along(sheared, d) == 1


def test_lattice_width_unimodular_invariance():
    rng = random.Random(15)
    for _ in range(20):
        p = random_lattice_polygon(rng, size=4)
        t = random_unimodular(rng)
        assert lattice.lattice_width(p)[0] == lattice.lattice_width(lattice.apply(t, p))[0]


def test_lattice_width_is_attained_and_minimal_nearby():
    rng = random.Random(16)
    for _ in range(15):
        p = random_lattice_polygon(rng, size=5)
        w, d = lattice.lattice_width(p)
        assert lattice.width_along(p, d) == w
        for a in range(-7, 8):
            for b in range(-7, 8):
                if (a, b) != (0, 0):
                    assert lattice.width_along(p, (a, b)) >= w


def test_smooth_vertices():
    assert lattice.smooth_vertices(lattice.unit_triangle()) == [0, 1, 2]
    assert lattice.smooth_vertices(lattice.rectangle(1, 1)) == [0, 1, 2, 3]
    sing = lattice.triangle(1, 2)
    smooth = lattice.smooth_vertices(sing)
    assert len(smooth) == 2
    assert all(sing.vertices[i] != (1, 0) for i in smooth)


def test_normalize_places_smooth_corner_at_origin():
    rng = random.Random(17)
    done = 0
    while done < 20:
        p = random_lattice_polygon(rng, size=4)
        if not lattice.smooth_vertices(p):
            continue
        done += 1
        q, t = lattice.normalize(p)
        assert q == lattice.apply(t, p)
        assert (Fraction(0), Fraction(0)) in q.vertices
        i = q.vertices.index((Fraction(0), Fraction(0)))
        d_next, d_prev = lattice.vertex_directions(q, i)
        assert {d_next, d_prev} == {(1, 0), (0, 1)}


def test_normalize_translated_triangle():
    p = MomentPolygon(((1, 1), (2, 1), (1, 2)))
    q, t = lattice.normalize(p)
    assert q == lattice.unit_triangle()
    assert t.m == ((1, 0), (0, 1))
    assert t.t == (-1, -1)


def test_normalize_without_smooth_vertex():
    # every corner of this triangle is a singular cone
    p = MomentPolygon(((0, 0), (2, 1), (1, 3)))
    assert lattice.smooth_vertices(p) == []
    with pytest.raises(NoSmoothVertex):
        lattice.normalize(p)


def test_corner_chop():
    sq = lattice.rectangle(1, 1)
    chopped = lattice.corner_chop(sq, sq.vertices.index((1, 1)), Fraction(1, 2))
    assert len(chopped) == 5
    assert lattice.area(chopped) == 1 - Fraction(1, 8)
    at_origin = lattice.corner_chop(sq, sq.vertices.index((0, 0)), Fraction(1, 2))
    assert set(at_origin.vertices) == {
        (Fraction(1, 2), 0), (1, 0), (1, 1), (0, 1), (0, Fraction(1, 2))
    }
    with pytest.raises(ChopTooLarge):
        lattice.corner_chop(sq, 0, 1)
    with pytest.raises(ChopTooLarge):
        lattice.corner_chop(sq, 0, Fraction(-1, 2))


def test_contains():
    big = lattice.rectangle(2, 2)
    assert lattice.contains(big, lattice.rectangle(1, 1))
    assert not lattice.contains(lattice.rectangle(1, 1), big)
