"""Triangulations of point sets by incremental insertion.

``Triangulator`` is the mutable workhorse: it keeps the top simplices, the
owners of every (d-1)-face and a cache of face hyperplanes, so locating a
point or finding the boundary faces it sees costs only dot products.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .bounds import Bound, SizeCertificate, c_const, certify, degree_schedule, improved_c_const, rational_bound
from .errors import BudgetExceeded, DegenerateError, PreconditionError
from .geometry import Point, check_points, det, dot, int_hyperplane, integer_table
from .hull import build_hull, degrees, hull_volume, in_convex_position, max_convex_subset
from . import lp


@dataclass(frozen=True)
class SimplicialComplex:
    dim: int
    vertexset: frozenset
    top_simplices: frozenset
    provenance: str = ""

    @property
    def size(self) -> int:
        return len(self.top_simplices)

    def containing(self, X) -> "SimplicialComplex":
        xs = frozenset(X)
        tops = frozenset(s for s in self.top_simplices if xs <= s)
        return SimplicialComplex(self.dim, frozenset().union(*tops) if tops else frozenset(),
                                 tops, self.provenance)

    def sorted_simplices(self) -> list:
        return sorted(tuple(sorted(s)) for s in self.top_simplices)


def make_complex(dim, simplices, provenance="") -> SimplicialComplex:
    tops = frozenset(frozenset(s) for s in simplices)
    verts = frozenset().union(*tops) if tops else frozenset()
    return SimplicialComplex(dim, verts, tops, provenance)


class Triangulator:
    """Incremental triangulation over a fixed universe of points."""

    def __init__(self, points: Iterable[Point], dim: int | None = None, table=None):
        pts = list(points)
        self.dim = check_points(pts, dim)
        self.table = table if table is not None else integer_table(pts)
        self.simplices: set = set()
        self.owners: dict = {}     # (d-1)-face -> set of simplices
        self.planes: dict = {}     # (d-1)-face -> (normal, offset)
        self.last = None

    # -- bookkeeping
    def plane(self, face):
        pl = self.planes.get(face)
        if pl is None:
            pl = int_hyperplane([self.table[v] for v in sorted(face)])
            if not any(pl[0]):
                raise DegenerateError("not-general-position", f"face {sorted(face)} is degenerate")
            self.planes[face] = pl
        return pl

    def side(self, face, x) -> int:
        n, off = self.plane(face)
        v = dot(n, x) - off
        return (v > 0) - (v < 0)

    def add(self, simplex):
        s = frozenset(simplex)
        self.simplices.add(s)
        for v in s:
            self.owners.setdefault(s - {v}, set()).add(s)
        self.last = s

    def remove(self, simplex):
        s = frozenset(simplex)
        self.simplices.discard(s)
        for v in s:
            f = s - {v}
            own = self.owners[f]
            own.discard(s)
            if not own:
                del self.owners[f]

    @property
    def vertices(self) -> set:
        return set().union(*self.simplices) if self.simplices else set()

    def boundary_faces(self):
        return [f for f, own in self.owners.items() if len(own) == 1]

    # -- queries
    def contains_strictly(self, s, x) -> int:
        """1 inside, 0 on the boundary, -1 outside."""
        res = 1
        for v in s:
            f = s - {v}
            a = self.side(f, x)
            b = self.side(f, self.table[v])
            if a == 0:
                res = 0
            elif a != b:
                return -1
        return res

    def locate(self, pid):
        """Simplex containing the point in its interior, or None if outside.

        Visibility walk from the most recent simplex; walks can cycle in
        arbitrary triangulations, so after a step limit fall back to a scan.
        """
        x = self.table[pid]
        cur = self.last if self.last in self.simplices else next(iter(self.simplices))
        for _ in range(len(self.simplices) + 1):
            nxt = None
            for v in sorted(cur):
                f = cur - {v}
                a = self.side(f, x)
                if a == 0:
                    raise DegenerateError("not-general-position", f"point {pid} lies on face {sorted(f)}")
                if a != self.side(f, self.table[v]):
                    other = [s for s in self.owners[f] if s != cur]
                    if not other:
                        nxt = None
                        break
                    nxt = other[0]
                    break
            else:
                return cur
            if nxt is None:
                break
            cur = nxt
        for s in self.simplices:
            r = self.contains_strictly(s, x)
            if r == 1:
                return s
            if r == 0:
                raise DegenerateError("not-general-position", f"point {pid} lies on a face")
        return None

    def visible_boundary(self, pid):
        x = self.table[pid]
        out = []
        for f in self.boundary_faces():
            (s,) = self.owners[f]
            (v,) = s - f
            a = self.side(f, x)
            if a == 0:
                raise DegenerateError("not-general-position", f"point {pid} lies on the plane of {sorted(f)}")
            if a != self.side(f, self.table[v]):
                out.append(f)
        return out

    # -- construction
    def start(self, simplex):
        if len(simplex) != self.dim + 1:
            raise PreconditionError("underdetermined", "initial simplex needs d+1 vertices")
        verts = [self.table[v] for v in simplex]
        if det([[a - b for a, b in zip(p, verts[0])] for p in verts[1:]]) == 0:
            raise DegenerateError("not-general-position", f"points {sorted(simplex)} are affinely dependent")
        self.add(simplex)

    def insert(self, pid) -> int:
        """Insert one point; returns the increase in the number of simplices."""
        if pid in self.vertices:
            raise PreconditionError("duplicate", f"point {pid} already present")
        s = self.locate(pid)
        if s is not None:
            self.remove(s)
            for v in s:
                self.add((s - {v}) | {pid})
            return self.dim
        faces = self.visible_boundary(pid)
        if not faces:
            raise DegenerateError("not-general-position", f"point {pid} neither inside nor outside")
        for f in faces:
            self.add(f | {pid})
        return len(faces)

    def complex(self, provenance="") -> SimplicialComplex:
        return make_complex(self.dim, self.simplices, provenance)


def _universe(points):
    d = check_points(points)
    return d, {p.id: p for p in points}


def insert_point(T: SimplicialComplex, points: Sequence[Point], pid: int) -> SimplicialComplex:
    """Insert point ``pid`` (from ``points``) into triangulation ``T``."""
    d, _ = _universe(points)
    tr = Triangulator(points, d)
    for s in sorted(T.top_simplices, key=sorted):
        tr.add(s)
    tr.insert(pid)
    return tr.complex(T.provenance)


def shelling_triangulation(points: Sequence[Point], order=None) -> SimplicialComplex:
    """Insert points one after another (by id unless ``order`` is given)."""
    d, by_id = _universe(points)
    ids = list(order) if order is not None else sorted(by_id)
    if len(ids) < d + 1:
        raise PreconditionError("underdetermined", f"need at least {d + 1} points")
    tr = Triangulator(points, d)
    tr.start(ids[: d + 1])
    for pid in ids[d + 1:]:
        tr.insert(pid)
    return tr.complex("shelling")


def pulling_triangulation(points: Sequence[Point], pid: int, hull=None) -> SimplicialComplex:
    """Cone from ``pid`` over every hull facet not containing it.

    Requires all other points to be hull vertices.
    """
    d, by_id = _universe(points)
    if pid not in by_id:
        raise PreconditionError("not-pullable", f"point {pid} not in the set")
    hull = hull or build_hull(points)
    stray = set(by_id) - hull.vertices - {pid}
    if stray:
        raise PreconditionError("not-pullable", f"points {sorted(stray)} are not hull vertices")
    tops = [f.vertices | {pid} for f in hull.facets if pid not in f.vertices]
    return make_complex(d, tops, "pulling")


# ---------------------------------------------------------------- large triangulations

def _removal_sequence(points, stop, improved):
    """Repeatedly delete a maximum degree hull vertex (ties: smallest id)."""
    d = points[0].dim
    cur = {p.id: p for p in points}
    order, degs, ok = [], [], True
    while len(cur) > stop:
        h = build_hull(list(cur.values()))
        if h.interior:
            raise PreconditionError("not-convex", f"points {sorted(h.interior)} are not in convex position")
        dg = degrees(h)
        v = min(dg, key=lambda u: (-dg[u], u))
        need = degree_schedule(d, len(cur)) if improved else 2 * d
        if dg[v] < need:
            ok = False
        order.append(v)
        degs.append(dg[v])
        del cur[v]
    return order, degs, ok, sorted(cur)


def convex_big_triangulation(points: Sequence[Point], improved: bool = False):
    """Large triangulation of a point set in convex position.

    Points of high 1-skeleton degree are peeled off and reinserted in reverse
    order; reinserting a point of degree r adds at least r - (d-1) simplices.
    Returns ``(complex, certificate)``.
    """
    d, by_id = _universe(points)
    n = len(points)
    if d <= 2:
        raise PreconditionError("dimension", "needs d > 2")
    if n <= d * (d + 1):
        raise PreconditionError("too-small", f"needs more than {d * (d + 1)} points")
    stop = d + 1 if improved else d * (d + 1)
    order, degs, deg_ok, core = _removal_sequence(list(points), stop, improved)
    tr = Triangulator(points, d)
    if improved:
        tr.start(core)
    else:
        tr.start(core[: d + 1])
        for pid in core[d + 1:]:
            tr.insert(pid)
    gains = []
    for pid in reversed(order):
        gains.append(tr.insert(pid))
    gains.reverse()
    K = tr.complex("convex-big")
    cd = improved_c_const(d) if improved else c_const(d)
    bound = rational_bound("(d+1)n-c'_d" if improved else "(d+1)n-c_d", (d + 1) * n - cd)
    cert = certify(K.size, bound, removal_order=order, degrees=degs,
                   degree_condition=deg_ok, reinsertion_gains=gains,
                   gains_ok=all(g >= r - (d - 1) for g, r in zip(gains, degs)))
    return K, cert


def nested_triangulation(P: Sequence[Point], Q: Sequence[Point], improved: bool = False):
    """Triangulate Q (convex position) then insert P."""
    pts = list(Q) + list(P)
    d, _ = _universe(pts)
    if len(Q) <= d * (d + 1):
        raise PreconditionError("too-small", f"|Q| must exceed {d * (d + 1)}")
    KQ, cq = convex_big_triangulation(Q, improved)
    tr = Triangulator(pts, d)
    for s in KQ.top_simplices:
        tr.add(s)
    for p in sorted(P, key=lambda p: p.id):
        tr.insert(p.id)
    K = tr.complex("nested")
    cd = improved_c_const(d) if improved else c_const(d)
    bound = rational_bound("(d+1)|Q|+|P|-c_d", (d + 1) * len(Q) + len(P) - cd)
    return K, certify(K.size, bound, core=cq)


def dn_log_triangulation(points: Sequence[Point], improved: bool = False, *,
                         search_budget: int = 4000):
    """Triangulation with many simplices for an arbitrary point set, d > 2.

    Branch "hull": more than d(d+1) hull vertices, so the hull is triangulated
    with the convex-position construction and interior points add d each.
    Branch "convex-subset": a convex subset Q with |Q| > d(d+1) is triangulated
    first, the rest of the hull (P') is added, then the interior.
    Branch "fallback": no such subset found; the hull vertices are shelled.
    """
    d, by_id = _universe(points)
    n = len(points)
    if d <= 2:
        raise PreconditionError("dimension", "needs d > 2")
    if n < d + 1:
        raise PreconditionError("underdetermined", f"need at least {d + 1} points")
    hull = build_hull(points)
    h = len(hull.vertices)
    cd = improved_c_const(d) if improved else c_const(d)
    tr = Triangulator(points, d)
    details = {"h": h}
    head = Bound("dn+max{h,log2(n)/(2d)}-c_d", Fraction(d * n - cd + h))
    if h > d * (d + 1):
        hull_pts = [by_id[v] for v in sorted(hull.vertices)]
        K0, c0 = convex_big_triangulation(hull_pts, improved)
        for s in K0.top_simplices:
            tr.add(s)
        rest = sorted(hull.interior)
        branch = "hull"
        bound = rational_bound("dn+h-c_d", d * n + h - cd)
        details["core"] = c0
    else:
        Q = None
        try:
            Q = max_convex_subset(points, d * (d + 1) + 1, node_budget=search_budget)
        except BudgetExceeded:
            Q = None
        if Q is not None:
            qids = {p.id for p in Q}
            Pp = sorted(hull.vertices - qids)
            K0, c0 = convex_big_triangulation(Q, improved)
            for s in K0.top_simplices:
                tr.add(s)
            for pid in Pp:
                tr.insert(pid)
            rest = sorted(set(by_id) - qids - set(Pp))
            branch = "convex-subset"
            bound = rational_bound("dn+|Q|-(d-1)|P'|-c_d", d * n + len(Q) - (d - 1) * len(Pp) - cd)
            details.update(q=len(Q), p_prime=len(Pp), core=c0)
        else:
            hv = sorted(hull.vertices)
            tr.start(hv[: d + 1])
            for pid in hv[d + 1:]:
                tr.insert(pid)
            rest = sorted(hull.interior)
            branch = "fallback"
            bound = rational_bound("dn+h-c_d", d * n + h - cd)
    for pid in rest:
        tr.insert(pid)
    K = tr.complex("dn-log")
    # the headline max{h, log2 n/(2d)} term: h dominates whenever h >= log2(n)/(2d)
    log_term = Bound("dn+log2(n)/(2d)-c_d", Fraction(d * n - cd), "log2", Fraction(1, 2 * d), n)
    details["branch"] = branch
    details["headline_h"] = head.satisfied_by(K.size)
    details["headline_log"] = log_term.satisfied_by(K.size)
    return K, certify(K.size, bound, **details)


# ---------------------------------------------------------------- validation

@dataclass(frozen=True)
class Violation:
    kind: str
    simplices: tuple = ()
    message: str = ""


def _bbox(verts):
    return [(min(c), max(c)) for c in zip(*verts)]


def _separated(tab, s1, s2, planes):
    """A facet plane of s1 leaving s2 strictly outside, shared vertices on it."""
    for v in s1:
        f = s1 - {v}
        n, off = planes(f)
        inner = dot(n, tab[v]) - off
        ok = True
        for w in s2:
            val = dot(n, tab[w]) - off
            if val == 0:
                if w not in f:
                    ok = False
                    break
            elif (val > 0) == (inner > 0):
                ok = False
                break
        if ok:
            return True
    return False


def validate_complex(K: SimplicialComplex, points: Sequence[Point], triangulation: bool = True):
    """Exact validity check. Returns ``None`` or the first ``Violation``.

    Every pair of simplices must meet exactly in the hull of their shared
    vertices. For a triangulation the vertex set must be the whole point set
    and the volumes must add up to the hull volume.
    """
    d, by_id = _universe(points)
    tab = integer_table(points)
    cache = {}

    def planes(f):
        pl = cache.get(f)
        if pl is None:
            pl = cache[f] = int_hyperplane([tab[v] for v in sorted(f)])
        return pl

    tops = sorted((frozenset(s) for s in K.top_simplices), key=sorted)
    vol = Fraction(0)
    for s in tops:
        if len(s) != d + 1 or not s <= by_id.keys():
            return Violation("bad-simplex", (tuple(sorted(s)),))
        vs = [by_id[v].coords for v in sorted(s)]
        v = det([[a - b for a, b in zip(p, vs[0])] for p in vs[1:]])
        if v == 0:
            return Violation("degenerate", (tuple(sorted(s)),))
        vol += abs(v)
    boxes = [_bbox([tab[v] for v in s]) for s in tops]
    order = sorted(range(len(tops)), key=lambda i: boxes[i][0][0])
    active = []
    for i in order:
        lo = boxes[i][0][0]
        active = [j for j in active if boxes[j][0][1] >= lo]
        for j in active:
            if any(boxes[i][k][0] > boxes[j][k][1] or boxes[j][k][0] > boxes[i][k][1] for k in range(d)):
                continue
            a, b = tops[i], tops[j]
            if _separated(tab, a, b, planes) or _separated(tab, b, a, planes):
                continue
            A = sorted(a)
            ok = lp.proper_intersection([tab[v] for v in A], [tab[v] for v in sorted(b)],
                                        [v in b for v in A])
            if not ok:
                return Violation("improper-intersection", (tuple(sorted(a)), tuple(sorted(b))))
        active.append(i)
    if triangulation:
        if set(K.vertexset) != set(by_id):
            return Violation("vertex-set", message=f"missing {sorted(set(by_id) - K.vertexset)}")
        hull = build_hull(points)
        if vol != hull_volume(hull, points):
            return Violation("coverage", message="volumes do not add up to the hull volume")
    return None
