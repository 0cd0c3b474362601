"""d-dimensional convex hulls by exact beneath-beyond insertion.

Points are inserted in id order after an initial simplex. Conflict lists
record which facets every pending point sees; a new facet over a horizon
ridge can only be seen by points that saw one of the two old facets on that
ridge.
"""
from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Sequence

from .errors import BudgetExceeded, DegenerateError, PreconditionError
from .geometry import (Hyperplane, Point, check_points, det, dot, int_hyperplane,
                       integer_table)


@dataclass(frozen=True)
class Facet:
    vertices: frozenset
    plane: Hyperplane  # outward: the hull lies in normal . x <= offset


@dataclass(frozen=True)
class HullSkeleton:
    dim: int
    vertices: frozenset
    facets: tuple
    interior: frozenset
    ridges: dict = field(compare=False, repr=False)

    @property
    def fvector(self) -> tuple:
        return f_vector(self)

    def facet_sets(self):
        return [f.vertices for f in self.facets]


@dataclass(frozen=True)
class FacetVisibility:
    viewer: int
    visible: tuple


class _Builder:
    def __init__(self, table, d):
        self.t = table
        self.d = d
        self.facets = {}      # fid -> (verts tuple, normal, offset)
        self.ridges = {}      # frozenset -> set(fid)
        self.fconf = {}       # fid -> set(pid)
        self.pconf = {}       # pid -> set(fid)
        self.next_id = 0
        self.csum = None      # (d+1) * interior reference point

    def _plane(self, verts):
        n, off = int_hyperplane([self.t[v] for v in verts])
        if not any(n):
            raise DegenerateError("not-general-position", f"facet {sorted(verts)} is degenerate")
        s = dot(n, self.csum) - (self.d + 1) * off
        if s == 0:
            raise DegenerateError("not-general-position", "reference point on a facet plane")
        if s > 0:
            n = tuple(-c for c in n)
            off = -off
        return n, off

    def add_facet(self, verts, candidates):
        verts = tuple(sorted(verts))
        n, off = self._plane(verts)
        fid = self.next_id
        self.next_id += 1
        self.facets[fid] = (verts, n, off)
        for r in itertools.combinations(verts, self.d - 1):
            self.ridges.setdefault(frozenset(r), set()).add(fid)
        conf = set()
        for p in candidates:
            v = dot(n, self.t[p]) - off
            if v > 0:
                conf.add(p)
                self.pconf[p].add(fid)
            elif v == 0:
                raise DegenerateError("not-general-position",
                                      f"point {p} lies on the plane of {list(verts)}")
        self.fconf[fid] = conf
        return fid

    def remove_facet(self, fid):
        verts, _, _ = self.facets.pop(fid)
        for r in itertools.combinations(verts, self.d - 1):
            key = frozenset(r)
            s = self.ridges[key]
            s.discard(fid)
            if not s:
                del self.ridges[key]
        for p in self.fconf.pop(fid):
            if p in self.pconf:
                self.pconf[p].discard(fid)

    def insert(self, q):
        vis = self.pconf.pop(q)
        if not vis:
            return False
        horizon = []
        for f in vis:
            verts = self.facets[f][0]
            for r in itertools.combinations(verts, self.d - 1):
                key = frozenset(r)
                other = next(g for g in self.ridges[key] if g != f)
                if other not in vis:
                    horizon.append((key, f, other))
        new = []
        for key, f, g in horizon:
            cand = (self.fconf[f] | self.fconf[g])
            cand.discard(q)
            new.append((key | {q}, cand))
        for f in list(vis):
            self.remove_facet(f)
        for verts, cand in new:
            self.add_facet(verts, sorted(cand))
        return True


def build_hull(points: Sequence[Point]) -> HullSkeleton:
    d = check_points(points)
    n = len(points)
    if n < d + 1:
        raise PreconditionError("underdetermined", f"need at least {d + 1} points, got {n}")
    table = integer_table(points)
    order = sorted(table)
    init = order[: d + 1]
    base = [table[i] for i in init]
    if det([[a - b for a, b in zip(p, base[0])] for p in base[1:]]) == 0:
        raise DegenerateError("not-general-position", f"points {init} are affinely dependent")
    b = _Builder(table, d)
    b.csum = tuple(sum(c) for c in zip(*base))
    rest = order[d + 1:]
    for p in rest:
        b.pconf[p] = set()
    for i in range(d + 1):
        b.add_facet([v for j, v in enumerate(init) if j != i], rest)
    for p in rest:
        b.insert(p)
    facets = []
    scale = _scale_of(points, table)
    for fid, (verts, nrm, off) in b.facets.items():
        facets.append(Facet(frozenset(verts), Hyperplane(tuple(Fraction(c) for c in nrm), Fraction(off, scale))))
    facets.sort(key=lambda f: sorted(f.vertices))
    verts = frozenset().union(*(f.vertices for f in facets))
    idx = {f.vertices: i for i, f in enumerate(facets)}
    ridges = {}
    for key, fids in b.ridges.items():
        pair = sorted(idx[frozenset(b.facets[f][0])] for f in fids)
        ridges[key] = tuple(pair)
    return HullSkeleton(d, verts, tuple(facets), frozenset(order) - verts, ridges)


def _scale_of(points, table):
    for p in points:
        for c, ci in zip(p.coords, table[p.id]):
            if c != 0:
                return Fraction(ci) / c
    return Fraction(1)


def f_vector(hull: HullSkeleton) -> tuple:
    d = hull.dim
    out = []
    for m in range(d):
        faces = set()
        for f in hull.facets:
            for s in itertools.combinations(sorted(f.vertices), m + 1):
                faces.add(s)
        out.append(len(faces))
    return tuple(out)


def one_skeleton(hull: HullSkeleton) -> dict:
    """Vertex adjacency of the hull's 1-skeleton."""
    adj = {v: set() for v in hull.vertices}
    for f in hull.facets:
        for a, b in itertools.combinations(f.vertices, 2):
            adj[a].add(b)
            adj[b].add(a)
    return {v: frozenset(s) for v, s in adj.items()}


def degrees(hull: HullSkeleton) -> dict:
    return {v: len(s) for v, s in one_skeleton(hull).items()}


def visible_facets(hull: HullSkeleton, p: Point) -> FacetVisibility:
    vis = []
    for f in hull.facets:
        s = f.plane.side(p.coords)
        if s == 0:
            raise DegenerateError("not-general-position", f"point {p.id} lies on a facet plane")
        if s > 0:
            vis.append(f)
    if not vis:
        raise PreconditionError("not-exterior", f"point {p.id} is inside the hull")
    return FacetVisibility(p.id, tuple(vis))


def is_face_of_hull(X, hull: HullSkeleton) -> bool:
    """In general position the hull is simplicial, so Conv(X) is a face iff
    X lies in the vertex set of one facet."""
    xs = frozenset(X)
    return any(xs <= f.vertices for f in hull.facets)


def hull_volume(hull: HullSkeleton, points: Sequence[Point]) -> Fraction:
    """d! times the volume of the hull (an exact rational)."""
    by_id = {p.id: p for p in points}
    vs = [by_id[v].coords for v in sorted(hull.vertices)]
    d = hull.dim
    c = [sum(col) / len(vs) for col in zip(*vs)]
    total = Fraction(0)
    for f in hull.facets:
        rows = [[a - b for a, b in zip(by_id[v].coords, c)] for v in sorted(f.vertices)]
        total += abs(det(rows))
    return total


def in_convex_position(points: Sequence[Point]) -> bool:
    d = check_points(points)
    if len(points) <= d + 1:
        return True
    return not build_hull(points).interior


def point_in_hull(hull: HullSkeleton, x) -> bool:
    """Closed containment test against the outward facet planes."""
    return all(f.plane.side(x) <= 0 for f in hull.facets)


def lower_bound_holds(hull: HullSkeleton) -> bool:
    """Lower bound inequalities for simplicial polytopes."""
    d = hull.dim
    fv = hull.fvector
    f0 = fv[0]
    if d < 3:
        return True
    for m in range(1, d - 1):
        if fv[m] < comb(d, m) * f0 - comb(d + 1, m + 1) * m:
            return False
    return fv[d - 1] >= (d - 1) * f0 - (d + 1) * (d - 2)


# ---------------------------------------------------------------- convex subsets

def convex_layers(points: Sequence[Point]) -> list[list[Point]]:
    d = check_points(points)
    rest = list(points)
    layers = []
    while len(rest) > d:
        h = build_hull(rest)
        layers.append([p for p in rest if p.id in h.vertices])
        rest = [p for p in rest if p.id in h.interior]
    if rest:
        layers.append(rest)
    return layers


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def largest_convex_polygon(points: Sequence[Point]) -> list[Point]:
    """Exact maximum subset in convex position for planar point sets.

    For every choice of lowest vertex p the others above it are sorted by
    angle and a dynamic programme over last edges extends convex chains.
    """
    table = integer_table(points)
    by_id = {p.id: p for p in points}
    ids = sorted(table, key=lambda i: (table[i][1], table[i][0]))
    best = ids[: min(2, len(ids))]
    for ai, a in enumerate(ids):
        pa = table[a]
        above = ids[ai + 1:]
        if len(above) + 1 <= len(best):
            continue
        above = sorted(above, key=functools.cmp_to_key(
            lambda u, v: -1 if _cross(pa, table[u], table[v]) > 0 else 1))
        m = len(above)
        P = [table[u] for u in above]
        # f[i][j]: longest chain a -> ... -> i -> j
        f = [[0] * m for _ in range(m)]
        prev = [[-1] * m for _ in range(m)]
        for j in range(m):
            for i in range(j):
                best_len, arg = 3, -1  # a, i, j
                for k in range(i):
                    if f[k][i] and _cross(P[k], P[i], P[j]) > 0 and f[k][i] + 1 > best_len:
                        best_len, arg = f[k][i] + 1, k
                f[i][j] = best_len
                prev[i][j] = arg
        for i in range(m):
            for j in range(i + 1, m):
                if f[i][j] > len(best) and _cross(P[i], P[j], pa) > 0:
                    chain = [j, i]
                    x, y = i, j
                    while prev[x][y] != -1:
                        x, y = prev[x][y], x
                        chain.append(x)
                    best = [a] + [above[c] for c in reversed(chain)]
    return [by_id[i] for i in best]


def max_convex_subset(points: Sequence[Point], floor: int = 0, *, size_cap: int = 16,
                      n_cap: int = 32, node_budget: int = 4000) -> list[Point]:
    """Largest subset in convex position that the search can certify.

    Planar input is solved exactly. In higher dimension the best convex layer
    seeds a branch and bound search over subsets in id order (convex position
    is hereditary, so failing prefixes are pruned). Raises ``BudgetExceeded``
    carrying the best subset when the floor is not reached.
    """
    d = check_points(points)
    pts = sorted(points, key=lambda p: p.id)
    if len(pts) <= d + 1:
        best = pts
    elif d == 2:
        best = largest_convex_polygon(pts)
    elif in_convex_position(pts):
        best = pts
    else:
        best = max(convex_layers(pts), key=len)
        if len(pts) <= n_cap and len(best) < size_cap:
            best = _search(pts, d, best, size_cap, node_budget)
    if len(best) < floor:
        raise BudgetExceeded("convex-subset-not-found",
                             f"best convex subset has {len(best)} < {floor} points",
                             best=[p.id for p in best])
    return sorted(best, key=lambda p: p.id)


def _search(pts, d, best, size_cap, budget):
    best = list(best)
    nodes = 0
    n = len(pts)

    def convex(sub):
        if len(sub) <= d + 1:
            return True
        return not build_hull(sub).interior

    stack = [([], 0)]
    while stack:
        cur, start = stack.pop()
        if len(cur) > len(best):
            best = list(cur)
            if len(best) >= size_cap:
                break
        for i in range(n - 1, start - 1, -1):
            if len(cur) + (n - i) <= len(best):
                continue
            cand = cur + [pts[i]]
            nodes += 1
            if nodes > budget:
                return best
            if convex(cand):
                stack.append((cand, i + 1))
    return best


def gale_facets(n: int, d: int) -> list[tuple]:
    """Facets of the cyclic polytope on n points via Gale's evenness rule."""
    out = []
    for F in itertools.combinations(range(n), d):
        s = set(F)
        ok = True
        for i, j in itertools.combinations([x for x in range(n) if x not in s], 2):
            if sum(1 for x in F if i < x < j) % 2:
                ok = False
                break
        if ok:
            out.append(F)
    return out
