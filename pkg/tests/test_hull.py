import itertools
import random
from fractions import Fraction
from math import factorial

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.spatial import ConvexHull

from emptymono.errors import BudgetExceeded, DegenerateError, PreconditionError
from emptymono.generate import generate
from emptymono.geometry import Point, int_hyperplane, points_from
from emptymono.hull import (build_hull, convex_layers, degrees, f_vector, gale_facets, hull_volume,
                            in_convex_position, is_face_of_hull, largest_convex_polygon,
                            lower_bound_holds, max_convex_subset, one_skeleton, point_in_hull,
                            visible_facets)


def brute_facets(points):
    """d-subsets whose hyperplane has every other point strictly on one side."""
    d = points[0].dim
    out = set()
    for F in itertools.combinations(points, d):
        nrm, off = int_hyperplane([p.coords for p in F])
        sides = {(sum(a * b for a, b in zip(nrm, q.coords)) > off) for q in points if q not in F}
        if len(sides) <= 1:
            out.add(frozenset(p.id for p in F))
    return out


@pytest.mark.parametrize("d,n,seed", [(2, 12, 0), (3, 14, 1), (3, 20, 2), (4, 12, 3), (5, 10, 4)])
def test_facets_match_brute_force(d, n, seed):
    inst = generate("random-ball", n, d, seed=seed, box=200)
    pts = list(inst.points)
    h = build_hull(pts)
    assert set(h.facet_sets()) == brute_facets(pts)
    assert h.vertices | h.interior == {p.id for p in pts}


@pytest.mark.parametrize("n,d", [(7, 3), (8, 4), (9, 4), (8, 5), (10, 3)])
def test_cyclic_polytope_facets_follow_evenness_rule(n, d):
    inst = generate("moment-curve", n, d)
    h = build_hull(list(inst.points))
    assert set(h.facet_sets()) == {frozenset(F) for F in gale_facets(n, d)}
    assert not h.interior


@pytest.mark.parametrize("seed", range(6))
def test_euler_relation_and_lower_bound(seed):
    d = 3 + seed % 3
    inst = generate("random-ball", 14, d, seed=seed, box=500)
    h = build_hull(list(inst.points))
    fv = f_vector(h)
    alt = sum((-1) ** i * f for i, f in enumerate(fv))
    assert alt == 1 - (-1) ** d
    assert lower_bound_holds(h)
    assert sum(degrees(h).values()) == 2 * fv[1]
    assert all(v in one_skeleton(h)[u] for u in h.vertices for v in one_skeleton(h)[u])


@pytest.mark.parametrize("d", [2, 3, 4])
def test_volume_matches_scipy(d):
    inst = generate("random-ball", 15, d, seed=d, box=1000)
    pts = list(inst.points)
    h = build_hull(pts)
    ref = ConvexHull(np.array([[float(c) for c in p.coords] for p in pts])).volume
    assert abs(float(hull_volume(h, pts)) / factorial(d) - ref) < 1e-6 * ref
    assert h.vertices == frozenset(ConvexHull(np.array([[float(c) for c in p.coords] for p in pts])).vertices)


def test_point_in_hull_and_visibility():
    pts = points_from([(0, 0, 0), (6, 0, 0), (0, 6, 0), (0, 0, 6)])
    h = build_hull(pts)
    assert point_in_hull(h, (1, 1, 1))
    assert point_in_hull(h, (0, 0, 0))
    assert not point_in_hull(h, (5, 5, 5))
    vis = visible_facets(h, Point.make(9, (5, 5, 5)))
    assert len(vis.visible) == 1 and vis.visible[0].vertices == {1, 2, 3}
    with pytest.raises(PreconditionError):
        visible_facets(h, Point.make(9, (1, 1, 1)))


def test_hull_rejects_degenerate_start_and_too_few_points():
    with pytest.raises(DegenerateError):
        build_hull(points_from([(0, 0), (1, 1), (2, 2), (0, 5)]))
    with pytest.raises(PreconditionError):
        build_hull(points_from([(0, 0, 0), (1, 0, 0), (0, 1, 0)]))


def test_is_face_of_hull_on_simplex():
    pts = points_from([(0, 0, 0), (6, 0, 0), (0, 6, 0), (0, 0, 6), (1, 1, 1)])
    h = build_hull(pts)
    assert is_face_of_hull({0, 1}, h)
    assert is_face_of_hull({1, 2, 3}, h)
    assert not is_face_of_hull({4}, h)
    assert not is_face_of_hull({0, 4}, h)


def test_convex_layers_partition():
    inst = generate("random-ball", 30, 3, seed=8, box=300)
    layers = convex_layers(list(inst.points))
    ids = [p.id for L in layers for p in L]
    assert sorted(ids) == list(range(30))
    assert all(in_convex_position(L) for L in layers)


def _brute_largest_convex(points):
    for r in range(len(points), 2, -1):
        for sub in itertools.combinations(points, r):
            if in_convex_position(list(sub)):
                return r
    return min(2, len(points))


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000), st.integers(4, 9))
def test_largest_convex_polygon_is_exact(seed, n):
    inst = generate("random-ball", n, 2, seed=seed, box=30)
    pts = list(inst.points)
    best = largest_convex_polygon(pts)
    assert in_convex_position(best)
    assert len(best) == _brute_largest_convex(pts)


def test_max_convex_subset_floor_raises_with_best():
    inst = generate("random-ball", 20, 3, seed=2, box=100)
    pts = list(inst.points)
    best = max_convex_subset(pts)
    assert in_convex_position(best)
    with pytest.raises(BudgetExceeded) as e:
        max_convex_subset(pts, floor=21)
    assert len(e.value.payload["best"]) == len(best)
