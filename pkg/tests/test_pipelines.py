import itertools
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from emptymono import lp
from emptymono.coloring import ColoredPointSet, discrepancy
from emptymono.errors import BudgetExceeded, GeometryError, PreconditionError
from emptymono.generate import generate, two_class_instance
from emptymono.geometry import Point, orientation
from emptymono.pipelines import (Kind, _ceil_power, _ge_root, _lt_root, census, closure,
                                 combined_2color, combined_kcolor, doubling_construction,
                                 doubling_directions, exists_empty_mono, is_cut_out, linear_witnesses,
                                 peel_dichotomy_2color, peel_dichotomy_kcolor, project_from,
                                 project_induct_2color, project_induct_kcolor, slabs)

from conftest import brute_census, brute_empty


# ---------------------------------------------------------------- threshold helpers

@given(st.integers(-20, 400), st.integers(1, 10 ** 6), st.integers(1, 8), st.fractions(1, 9, max_denominator=5))
def test_root_comparisons(lhs, x, p, scale):
    ge = _ge_root(lhs, x, p, scale)
    v = Fraction(lhs) * scale
    assert ge == (v >= 0 and v ** p >= x)
    assert _lt_root(lhs, x, p, scale) == (not ge)


@given(st.integers(1, 10 ** 6), st.integers(1, 7))
def test_ceil_power(n, e):
    den = 2 ** e
    r = _ceil_power(n, den - 1, den)
    assert (8 * r) ** den >= n ** (den - 1)
    assert r == 0 or (8 * (r - 1)) ** den < n ** (den - 1)


# ---------------------------------------------------------------- census

@pytest.mark.parametrize("d,n,k,seed", [(2, 12, 2, 0), (2, 14, 3, 1), (3, 12, 2, 2), (3, 13, 3, 3), (4, 10, 2, 4)])
def test_census_matches_brute_force(d, n, k, seed):
    S = generate("random-ball", n, d, k, seed, box=500).colored()
    res = census(S)
    assert res.per_color == brute_census(S)
    assert res.total == sum(res.per_color.values())
    coords = {p.id: p.coords for p in S.points}
    for c, sims in res.simplices.items():
        for s in sims:
            assert {S.colors[v] for v in s} == {c} and brute_empty(s, coords)


@pytest.mark.parametrize("d,n,seed", [(2, 10, 0), (3, 11, 1), (4, 9, 2)])
def test_one_color_census_floor(d, n, seed):
    # every cell of a triangulation is empty and there are at least n-d of them
    S = generate("random-ball", n, d, seed=seed).colored()
    assert census(S).total >= n - d


def test_census_small_and_budget_and_jobs():
    S = generate("random-ball", 4, 3, seed=0).colored()
    assert census(S).total == 1
    big = generate("random-ball", 40, 3, 2, seed=0).colored()
    with pytest.raises(BudgetExceeded):
        census(big)
    S = generate("random-ball", 16, 3, 2, seed=5).colored()
    assert census(S, jobs=3).simplices == census(S).simplices


def test_census_skips_flat_subsets():
    pts = [Point.make(i, c) for i, c in enumerate([(0, 0), (1, 1), (2, 2), (3, 0), (0, 3)])]
    S = ColoredPointSet.make(pts, {i: 0 for i in range(5)}, 1)
    assert census(S).total == brute_census(S)[0]


# ---------------------------------------------------------------- closures and projection

def test_closure_and_cut_out():
    S = generate("random-ball", 20, 2, 2, seed=3).colored()
    ids = [p.id for p in S.points][:8]
    cl = closure(S, ids)
    assert set(ids) <= set(cl)
    assert is_cut_out(S, cl)
    assert closure(S, cl) == cl


@pytest.mark.parametrize("d,seed", [(3, 0), (4, 1)])
def test_project_from_counts_and_dimension(d, seed):
    S = generate("random-ball", 14, d, 3, seed).colored()
    pid = S.points[0].id
    img, side, u = project_from(S, pid)
    assert img.dim == d - 1
    assert img.n >= (S.n - 1 + 1) // 2
    assert pid not in img.ids()
    assert all(img.colors[i] == S.colors[i] for i in img.ids())


# ---------------------------------------------------------------- dichotomies

def _check_outcome(S, out):
    assert out.kind in (Kind.WITNESSES, Kind.CONVEX_SET)
    if out.kind is Kind.CONVEX_SET:
        assert out.region and out.cut_out == is_cut_out(S, out.region)
        assert out.region_delta == discrepancy(S.restrict(out.region)).delta
        assert out.trigger and out.threshold
    if out.witnesses is not None:
        assert out.witnesses.empty_verified
        coords = {p.id: p.coords for p in S.points}
        assert all(brute_empty(s, coords) for s in out.witnesses.simplices)


@pytest.mark.parametrize("scale", [1, 100])
def test_peel_kcolor(scale):
    S = generate("random-ball", 24, 3, 3, seed=2).colored()
    out = peel_dichotomy_kcolor(S, 0, scale)
    _check_outcome(S, out)
    if out.kind is Kind.WITNESSES:
        for r in out.rounds:
            if "sound" in r:
                assert r["sound"] and r["kill_bound_ok"]


@pytest.mark.parametrize("scale,seed", [(1, 0), (1000, 1), (1000, 2)])
def test_peel_2color(scale, seed):
    S = generate("random-ball", 40, 2, 2, seed=seed).colored()
    out = peel_dichotomy_2color(S, None, scale)
    _check_outcome(S, out)


def test_project_induct_kcolor_and_2color():
    S = generate("random-ball", 18, 4, 3, seed=1).colored()
    out = project_induct_kcolor(S, 0)
    _check_outcome(S, out)
    S2 = generate("random-ball", 18, 3, 2, seed=4).colored()
    _check_outcome(S2, project_induct_2color(S2))


@pytest.mark.parametrize("d,k,n,seed", [(3, 3, 20, 0), (4, 3, 16, 1), (3, 2, 18, 2), (2, 2, 30, 3)])
def test_combined_never_beats_census(d, k, n, seed):
    S = generate("random-ball", n, d, k, seed).colored()
    rep = combined_2color(S) if k == 2 else combined_kcolor(S)
    assert rep.empty_verified
    cen = census(S)
    for c, m in rep.details["per_color"].items():
        assert m <= cen.per_color[int(c)]


def test_regime_preconditions():
    S = generate("random-ball", 12, 3, 2, seed=0).colored()
    with pytest.raises(PreconditionError):
        peel_dichotomy_kcolor(S, 0)
    with pytest.raises(PreconditionError):
        combined_kcolor(S)
    with pytest.raises(PreconditionError):
        exists_empty_mono(S)
    with pytest.raises(PreconditionError):
        peel_dichotomy_2color(S)


# ---------------------------------------------------------------- existence and slabs

@pytest.mark.parametrize("d,n,seed", [(3, 16, 0), (3, 24, 1), (4, 18, 2)])
def test_exists_empty_mono(d, n, seed):
    S = generate("random-ball", n, d, d + 1, seed).colored()
    rep = exists_empty_mono(S)
    assert rep.empty_verified
    assert rep.details["kill_bound_ok"]
    if rep.count == 0:
        assert rep.details["inconclusive"]
        assert census(S).total == 0
    else:
        coords = {p.id: p.coords for p in S.points}
        assert brute_empty(rep.simplices[0], coords)


def test_linear_witnesses_and_slabs():
    S = generate("random-ball", 40, 3, 4, seed=3).colored()
    parts = slabs(S, 20)
    assert sorted(i for p in parts for i in p) == sorted(S.ids())
    assert all(len(p) >= 20 for p in parts)
    rep = linear_witnesses(S)
    assert rep.empty_verified
    coords = {p.id: p.coords for p in S.points}
    assert all(brute_empty(s, coords) for s in rep.simplices)


# ---------------------------------------------------------------- doubling

@pytest.mark.parametrize("n", [2, 3, 5])
def test_doubling_pairs_are_empty_and_interior_disjoint(n):
    X = list(generate("random-ball", n, 3, seed=n, box=200).points)
    res = doubling_construction(X)
    assert res.verified
    assert len(res.simplices) == comb(n, 2)
    assert len(res.points) == 2 * n
    coords = {p.id: p.coords for p in res.points}
    by_id = {p.id: p for p in res.points}
    for s in res.simplices:
        assert orientation([by_id[v] for v in s]) != 0
        assert brute_empty(s, coords)
    for a, b in itertools.combinations(res.simplices, 2):
        assert not lp.interiors_intersect([coords[v] for v in a], [coords[v] for v in b])


def test_doubling_directions_avoid_segments():
    X = list(generate("random-ball", 6, 3, seed=1).points)
    dirs = doubling_directions(X)
    assert len(dirs) == 6
    with pytest.raises(PreconditionError):
        doubling_construction(list(generate("random-ball", 4, 2).points))
