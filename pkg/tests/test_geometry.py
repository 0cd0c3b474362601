import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conftest import frac_det, strictly_inside
from emptymono.errors import DegenerateError, GeometryError, PreconditionError
from emptymono.geometry import (AffineFlat, Hyperplane, Location, Point, SimplexTester, bareiss_det,
                                barycentric, central_project, check_points, det, general_position_check,
                                in_simplex, int_hyperplane, integer_table, orientation, points_from,
                                project_orthogonal, rank)

ints = st.integers(-50, 50)


@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(ints, min_size=n, max_size=n),
                                                    min_size=n, max_size=n)))
def test_bareiss_matches_laplace(m):
    assert bareiss_det(m) == frac_det(m)


@given(st.lists(st.lists(st.fractions(-5, 5, max_denominator=7), min_size=3, max_size=3),
                min_size=3, max_size=3))
def test_rational_det_matches_laplace(m):
    assert det(m) == frac_det(m)


def test_orientation_sign_flips_on_swap():
    pts = points_from([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)])
    assert orientation(pts) == 1
    assert orientation([pts[1], pts[0]] + pts[2:]) == -1
    flat = points_from([(0, 0, 0), (1, 0, 0), (2, 0, 0), (0, 0, 1)])
    assert orientation(flat) == 0


@settings(max_examples=60)
@given(st.lists(st.tuples(ints, ints, ints), min_size=5, max_size=5, unique=True))
def test_simplex_tester_agrees_with_barycentric(rows):
    pts = points_from(rows)
    simplex, x = pts[:4], pts[4]
    if orientation(simplex) == 0:
        with pytest.raises(DegenerateError):
            SimplexTester([p.coords for p in simplex])
        return
    t = SimplexTester(list(integer_table(simplex).values()))
    loc = in_simplex(x, simplex)
    assert t.locate(x.coords) == loc
    assert t.strictly_inside(x.coords) == (loc is Location.INTERIOR)
    assert t.strictly_inside(x.coords) == strictly_inside(x.coords, [p.coords for p in simplex])
    lam = barycentric(x, simplex)
    assert sum(lam) == 1


def test_integer_table_preserves_signs():
    pts = points_from([(Fraction(1, 2), Fraction(1, 3)), (Fraction(3, 4), 0), (0, Fraction(5, 6))])
    tab = integer_table(pts)
    assert all(isinstance(c, int) for v in tab.values() for c in v)
    scaled = [Point(i, tuple(Fraction(c) for c in v)) for i, v in tab.items()]
    assert orientation(scaled) == orientation(pts)


def test_int_hyperplane_contains_its_points():
    rng = random.Random(1)
    for _ in range(30):
        pts = [tuple(rng.randint(-9, 9) for _ in range(4)) for _ in range(4)]
        n, off = int_hyperplane(pts)
        assert all(sum(a * b for a, b in zip(n, p)) == off for p in pts)


def test_check_points_rejects_mixed_dimension_and_duplicates():
    with pytest.raises(GeometryError):
        check_points([Point.make(0, (1, 2)), Point.make(1, (1, 2, 3))])
    with pytest.raises(PreconditionError):
        check_points([Point.make(0, (1, 2)), Point.make(0, (3, 4))])


def test_general_position_check_finds_collinear_triple():
    pts = points_from([(0, 0), (1, 1), (2, 2), (5, 1)])
    bad = general_position_check(pts)
    assert bad is not None and set(bad) == {0, 1, 2}
    ok = points_from([(0, 0), (1, 3), (4, 1), (7, 9)])
    assert general_position_check(ok) is None


def test_general_position_check_brute_force():
    rng = random.Random(5)
    for _ in range(20):
        pts = points_from([(rng.randint(0, 3), rng.randint(0, 3), rng.randint(0, 3)) for _ in range(6)])
        coords = [p.coords for p in pts]
        if len(set(coords)) < len(coords):
            assert general_position_check(pts) is not None
            continue
        degenerate = any(frac_det([[a - b for a, b in zip(c, s[0])] for c in s[1:]]) == 0
                         for s in itertools.combinations(coords, 4))
        assert (general_position_check(pts) is not None) == degenerate


def test_project_orthogonal_kills_the_flat():
    pts = points_from([(1, 2, 3), (4, 1, 0), (2, 2, 2), (7, 3, 1)])
    flat = AffineFlat.through(pts[:2])
    img = project_orthogonal(pts, flat)
    assert img[0].coords == img[1].coords == (0, 0)
    assert rank([[a - b for a, b in zip(p.coords, img[0].coords)] for p in img[2:]]) == 2


def test_central_project_lands_on_planes_and_on_rays():
    apex = Point.make(99, (0, 0, 0))
    pts = points_from([(1, 2, 3), (-1, 1, -4), (2, -3, 5), (3, 1, -1)])
    planes = [Hyperplane((0, 0, 1), Fraction(-10)), Hyperplane((0, 0, 1), Fraction(10))]
    lo, hi = central_project(pts, apex, planes)
    assert sorted(p.id for p in lo) == [1, 3]
    assert sorted(p.id for p in hi) == [0, 2]
    assert all(p.dim == 2 for p in lo + hi)
    with pytest.raises(GeometryError):
        central_project(pts, apex, [Hyperplane((0, 0, 1), Fraction(0))])


def test_rank_of_dependent_vectors():
    assert rank([(1, 2, 3), (2, 4, 6), (0, 1, 0)]) == 2
