"""Deterministic instance generators."""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from math import comb

from .coloring import ColoredPointSet
from .errors import DegenerateError, PreconditionError
from .geometry import Point, bareiss_det, rank

KINDS = ("random-ball", "moment-curve", "convex", "doubled", "grid-perturbed")

# (d+1)-subset count above which general position is not certified
GP_BUDGET = 200_000


@dataclass(frozen=True)
class Instance:
    points: tuple
    colors: dict | None
    k: int | None
    kind: str = ""
    seed: int | None = None
    general_position: str = "unchecked"      # "certified" or "unchecked"
    params: dict = field(default_factory=dict, compare=False)

    @property
    def dim(self) -> int:
        return self.points[0].dim

    def colored(self, strict=True) -> ColoredPointSet:
        if self.colors is None:
            return ColoredPointSet.make(self.points, {p.id: 0 for p in self.points}, 1)
        return ColoredPointSet.make(self.points, self.colors, self.k, strict=strict)


class _GPGuard:
    """Incremental general-position test: a new point must not be affinely
    dependent with any d existing points (nor coincide with one)."""

    def __init__(self, d: int, active: bool):
        self.d = d
        self.active = active
        self.rows = []

    def accepts(self, x) -> bool:
        if not self.active:
            return True
        if x in self.rows:
            return False
        d = self.d
        if len(self.rows) < d:
            # dependent subsets extend to dependent (d+1)-subsets later on,
            # so while the set is small the whole set must be independent
            vecs = [[a - b for a, b in zip(y, x)] for y in self.rows]
            return not vecs or rank(vecs) == len(vecs)
        for sub in itertools.combinations(self.rows, d):
            if bareiss_det([[a - b for a, b in zip(y, x)] for y in sub]) == 0:
                return False
        return True

    def add(self, x):
        self.rows.append(x)


def _certifiable(n: int, d: int) -> bool:
    # the guard tests every d existing points against each new one
    return comb(n, d + 1) <= GP_BUDGET


def _draw(rng, d, box, guard, sampler, tries=10_000):
    for _ in range(tries):
        x = sampler(rng, d, box)
        if guard.accepts(x):
            guard.add(x)
            return x
    raise DegenerateError("general-position-budget", "could not place a point in general position")


def _ball(rng, d, box):
    while True:
        x = tuple(rng.randint(-box, box) for _ in range(d))
        if sum(c * c for c in x) <= box * box:
            return x


def _colors(rng, n: int, k: int | None):
    if not k:
        return None
    if k > n:
        raise PreconditionError("bad-coloring", f"k={k} exceeds n={n}")
    cols = [rng.randrange(k) for _ in range(n)]
    first = list(range(k))
    rng.shuffle(first)
    slots = rng.sample(range(n), k)
    for c, s in zip(first, slots):
        cols[s] = c
    return {i: c for i, c in enumerate(cols)}


def generate(kind: str, n: int, d: int, k: int | None = None, seed: int = 0, box: int | None = None) -> Instance:
    """Build an instance. Coordinates are integers (rationals for the doubled
    kind); general position is certified whenever the subset count allows."""
    if kind not in KINDS:
        raise PreconditionError("bad-kind", f"unknown kind {kind!r}")
    if d < 2 or d > 6:
        raise PreconditionError("dimension", "supported dimensions are 2..6")
    if n < 1:
        raise PreconditionError("underdetermined", "need at least one point")
    rng = random.Random(seed)
    certify_gp = _certifiable(n, d)
    guard = _GPGuard(d, certify_gp)
    params = {"n": n, "d": d, "k": k, "box": box}
    if kind == "moment-curve":
        rows = [tuple(t ** e for e in range(1, d + 1)) for t in range(1, n + 1)]
        gp = "certified"          # Vandermonde: any d+1 points are independent
    elif kind == "random-ball":
        box = box or 10_000
        rows = [_draw(rng, d, box, guard, _ball) for _ in range(n)]
        gp = "certified" if certify_gp else "unchecked"
    elif kind == "convex":
        box = box or 10_000
        lift = lambda r, dd, b: (lambda y: y + (sum(c * c for c in y),))(_ball(r, dd - 1, b))
        rows = [_draw(rng, d, box, guard, lift) for _ in range(n)]
        gp = "certified" if certify_gp else "unchecked"
    elif kind == "grid-perturbed":
        side = max(2, round(n ** (1.0 / d)) + 1)
        cells = list(itertools.product(range(side), repeat=d))
        rng.shuffle(cells)
        if len(cells) < n:
            raise PreconditionError("underdetermined", "grid too small")
        spacing = 1000
        it = iter(cells)

        def near(r, dd, b):
            g = next(it)
            return tuple(spacing * c + r.randint(-b, b) for c in g)

        box = box or 200
        rows = [_draw(rng, d, box, guard, near, tries=len(cells)) for _ in range(n)]
        gp = "certified" if certify_gp else "unchecked"
    else:  # doubled
        if d != 3:
            raise PreconditionError("dimension", "the doubled kind is three dimensional")
        from .pipelines import doubling_construction
        box = box or 1000
        half = n // 2
        gx = _GPGuard(3, _certifiable(half, 3))
        X = [Point(i, _draw(rng, 3, box, gx, _ball)) for i in range(half)]
        res = doubling_construction(X)
        pts = sorted(res.points, key=lambda p: p.id)
        pts = tuple(Point(i, p.coords) for i, p in enumerate(pts))
        params.update(epsilon=str(res.epsilon), box=box)
        return Instance(pts, _colors(rng, len(pts), k), k, kind, seed, "unchecked", params)
    pts = tuple(Point.make(i, r) for i, r in enumerate(rows))
    params["box"] = box
    return Instance(pts, _colors(rng, n, k), k, kind, seed, gp, params)


def colored(points, colors, k=None) -> ColoredPointSet:
    return ColoredPointSet.make(points, colors, k)


def two_class_instance(n_major: int, n_minor: int, d: int, seed: int = 0, k: int = 2, box: int = 10_000):
    """Random points where one class holds ``n_major`` points and the rest are
    spread over the other colors; handy for forcing a given discrepancy."""
    inst = generate("random-ball", n_major + n_minor, d, None, seed, box)
    rng = random.Random(seed + 1)
    ids = [p.id for p in inst.points]
    rng.shuffle(ids)
    cols = {i: 0 for i in ids[:n_major]}
    for t, i in enumerate(ids[n_major:]):
        cols[i] = 1 + t % (k - 1)
    return ColoredPointSet.make(inst.points, cols, k)


def simplex_hulled(eta: int, d: int, seed: int = 0, box: int = 1_000_000, k: int | None = None) -> Instance:
    """eta random points strictly inside the simplex spanned by the origin
    and box * e_i; the d+1 corners get ids 0..d."""
    rng = random.Random(seed)
    corners = [tuple(0 for _ in range(d))] + [tuple(box * int(i == j) for j in range(d)) for i in range(d)]
    guard = _GPGuard(d, _certifiable(eta + d + 1, d))
    for c in corners:
        guard.add(c)

    def inner(r, dd, b):
        while True:
            x = tuple(r.randint(1, b) for _ in range(dd))
            if sum(x) < b:
                return x

    rows = corners + [_draw(rng, d, box, guard, inner) for _ in range(eta)]
    pts = tuple(Point.make(i, r) for i, r in enumerate(rows))
    gp = "certified" if guard.active else "unchecked"
    return Instance(pts, _colors(rng, len(pts), k), k, "simplex-hulled", seed, gp,
                    {"eta": eta, "d": d, "box": box})
