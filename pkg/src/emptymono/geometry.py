"""Exact rational geometry: points, predicates and projections.

All coordinates are ``fractions.Fraction``. Sign predicates are evaluated on
integer matrices (rows cleared of denominators) with fraction free Bareiss
elimination, so no floating point is ever involved.
"""
from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DegenerateError, GeometryError, PreconditionError


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        # floats are accepted only when they are exact binary fractions the
        # caller asked for; strings are the lossless route
        return Fraction(x)
    return Fraction(x)


@dataclass(frozen=True)
class Point:
    id: int
    coords: tuple

    @staticmethod
    def make(pid, coords) -> "Point":
        return Point(int(pid), tuple(as_fraction(c) for c in coords))

    @property
    def dim(self) -> int:
        return len(self.coords)


def points_from(rows, start=0) -> list[Point]:
    """Build points with consecutive ids from coordinate rows."""
    return [Point.make(start + i, r) for i, r in enumerate(rows)]


def check_points(points: Sequence[Point], dim=None) -> int:
    if not points:
        if dim is None:
            raise PreconditionError("underdetermined", "empty point set")
        return dim
    d = points[0].dim if dim is None else dim
    ids = set()
    for p in points:
        if p.dim != d:
            raise GeometryError("dimension", f"point {p.id} has dimension {p.dim}, expected {d}")
        if p.id in ids:
            raise PreconditionError("duplicate", f"point id {p.id} repeated")
        ids.add(p.id)
    return d


@dataclass(frozen=True)
class Hyperplane:
    """The set ``normal . x == offset``; the positive side is ``> offset``."""
    normal: tuple
    offset: Fraction

    def value(self, x) -> Fraction:
        return sum((a * b for a, b in zip(self.normal, x)), Fraction(0)) - self.offset

    def side(self, x) -> int:
        return sign(self.value(x))


@dataclass(frozen=True)
class AffineFlat:
    basepoint: tuple
    directions: tuple

    @staticmethod
    def through(points: Sequence[Point]) -> "AffineFlat":
        b = points[0].coords
        dirs = tuple(tuple(c - c0 for c, c0 in zip(p.coords, b)) for p in points[1:])
        return AffineFlat(b, dirs)

    @property
    def rank(self) -> int:
        return len(self.directions)


class Location(enum.Enum):
    INTERIOR = "interior"
    BOUNDARY = "boundary"
    OUTSIDE = "outside"


def sign(x) -> int:
    return (x > 0) - (x < 0)


# ---------------------------------------------------------------- linear algebra

def bareiss_det(m: list[list[int]]) -> int:
    """Determinant of an integer matrix by fraction free elimination."""
    n = len(m)
    if n == 0:
        return 1
    if n <= 4:
        return _small_det(m, n)
    a = [list(r) for r in m]
    s = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    s = -s
                    break
            else:
                return 0
        akk = a[k][k]
        rk = a[k]
        for i in range(k + 1, n):
            ri = a[i]
            aik = ri[k]
            for j in range(k + 1, n):
                ri[j] = (ri[j] * akk - aik * rk[j]) // prev
        prev = akk
    return s * a[n - 1][n - 1]


def _det3(a, b, c):
    return (a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0])
            + a[2] * (b[0] * c[1] - b[1] * c[0]))


def _small_det(m, n):
    # closed forms; the hot path for hull facets and general-position tests in d <= 4
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    if n == 3:
        return _det3(m[0], m[1], m[2])
    r0, r1, r2, r3 = m
    # 2x2 minors of the bottom two rows, then expand along the top two
    s = [r2[i] * r3[j] - r2[j] * r3[i] for i, j in ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))]
    c = [r0[i] * r1[j] - r0[j] * r1[i] for i, j in ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))]
    return c[0] * s[5] - c[1] * s[4] + c[2] * s[3] + c[3] * s[2] - c[4] * s[1] + c[5] * s[0]


def _row_to_int(row) -> tuple[list[int], int]:
    den = 1
    for c in row:
        if isinstance(c, Fraction) and c.denominator != 1:
            den = den * c.denominator // math.gcd(den, c.denominator)
    if den == 1:
        return [int(c) for c in row], 1
    return [int(c * den) for c in row], den


def det(rows) -> Fraction:
    """Exact determinant of a square rational matrix."""
    ints, scale = [], 1
    for r in rows:
        ir, s = _row_to_int(r)
        ints.append(ir)
        scale *= s
    return Fraction(bareiss_det(ints), scale)


def det_sign(rows) -> int:
    ints = [_row_to_int(r)[0] for r in rows]
    return sign(bareiss_det(ints))


def rank(vectors) -> int:
    rows = [[as_fraction(c) for c in v] for v in vectors]
    if not rows:
        return 0
    r = 0
    ncol = len(rows[0])
    for c in range(ncol):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c] / rows[r][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    return r


def dot(u, v):
    return sum((a * b for a, b in zip(u, v)), 0)


def integer_table(points: Iterable[Point]) -> dict[int, tuple]:
    """Integer coordinates after one common positive scaling of the whole set.

    Scaling every point by the same positive factor preserves all sign
    predicates, so the table can be used wherever only signs matter.
    """
    pts = list(points)
    den = 1
    for p in pts:
        for c in p.coords:
            if c.denominator != 1:
                den = den * c.denominator // math.gcd(den, c.denominator)
    if den == 1:
        return {p.id: tuple(int(c) for c in p.coords) for p in pts}
    return {p.id: tuple(int(c * den) for c in p.coords) for p in pts}


def int_hyperplane(pts: Sequence[tuple]) -> tuple[tuple, int]:
    """Normal and offset of the hyperplane through ``d`` integer points.

    The normal satisfies ``normal . (x - p0) == det(p1-p0, ..., x-p0)``.
    A zero normal means the points are affinely dependent.
    """
    d = len(pts[0])
    p0 = pts[0]
    rows = [[a - b for a, b in zip(p, p0)] for p in pts[1:]]
    normal = []
    for j in range(d):
        minor = [r[:j] + r[j + 1:] for r in rows]
        c = bareiss_det(minor)
        if (d - 1 + j) % 2:
            c = -c
        normal.append(c)
    return tuple(normal), dot(normal, p0)


# ---------------------------------------------------------------- predicates

def orientation(points: Sequence[Point]) -> int:
    """Sign of det[p1-p0, ..., pd-p0] for d+1 points in R^d."""
    if not points:
        raise GeometryError("dimension", "no points")
    d = points[0].dim
    if len(points) != d + 1 or any(p.dim != d for p in points):
        raise GeometryError("dimension", f"orientation needs {d + 1} points in R^{d}")
    p0 = points[0].coords
    return det_sign([[a - b for a, b in zip(p.coords, p0)] for p in points[1:]])


def barycentric(x: Point, simplex: Sequence[Point]) -> tuple:
    d = x.dim
    if len(simplex) != d + 1 or any(p.dim != d for p in simplex):
        raise GeometryError("dimension", "simplex must have d+1 vertices in R^d")

    def vol(ps):
        q0 = ps[0].coords
        return det([[a - b for a, b in zip(q.coords, q0)] for q in ps[1:]])

    total = vol(simplex)
    if total == 0:
        raise DegenerateError("degenerate-simplex", "vertices are affinely dependent")
    out = []
    for i in range(d + 1):
        ps = list(simplex)
        ps[i] = x
        out.append(vol(ps) / total)
    return tuple(out)


def in_simplex(x: Point, simplex: Sequence[Point]) -> Location:
    lam = barycentric(x, simplex)
    if any(v < 0 for v in lam):
        return Location.OUTSIDE
    if all(v > 0 for v in lam):
        return Location.INTERIOR
    return Location.BOUNDARY


class SimplexTester:
    """Point location against one fixed simplex given by integer vertices.

    Facet hyperplanes are computed once so each query costs ``d+1`` dot
    products.
    """

    __slots__ = ("planes",)

    def __init__(self, verts: Sequence[tuple]):
        self.planes = []
        for i in range(len(verts)):
            facet = [v for j, v in enumerate(verts) if j != i]
            n, off = int_hyperplane(facet)
            s = dot(n, verts[i]) - off
            if s == 0:
                raise DegenerateError("degenerate-simplex", "vertices are affinely dependent")
            if s < 0:
                n = tuple(-c for c in n)
                off = -off
            self.planes.append((n, off))

    def locate(self, x) -> Location:
        boundary = False
        for n, off in self.planes:
            v = dot(n, x) - off
            if v < 0:
                return Location.OUTSIDE
            if v == 0:
                boundary = True
        return Location.BOUNDARY if boundary else Location.INTERIOR

    def strictly_inside(self, x) -> bool:
        for n, off in self.planes:
            if dot(n, x) <= off:
                return False
        return True


def general_position_check(points: Sequence[Point], cap: int = 64):
    """Return ``None`` when every subset of at most d+1 points is affinely
    independent, otherwise the ids of a violating (d+1)-subset."""
    d = check_points(points)
    n = len(points)
    if n > cap:
        raise PreconditionError("general-position-cap", f"n={n} exceeds cap {cap}")
    table = integer_table(points)
    ids = sorted(table)
    seen = {}
    for i in ids:
        if table[i] in seen:
            extra = [j for j in ids if j not in (i, seen[table[i]])][: d - 1]
            return tuple(sorted([seen[table[i]], i] + extra))
        seen[table[i]] = i
    if n <= d:
        vecs = [[a - b for a, b in zip(table[i], table[ids[0]])] for i in ids[1:]]
        return None if rank(vecs) == n - 1 else tuple(ids)
    for combo in itertools.combinations(ids, d):
        normal, off = int_hyperplane([table[i] for i in combo])
        if not any(normal):
            rest = next(j for j in ids if j not in combo)
            return tuple(sorted(combo + (rest,)))
        for j in ids:
            if j > combo[-1] and dot(normal, table[j]) == off:
                return combo + (j,)
    return None


# ---------------------------------------------------------------- projections

def _complement_basis(vectors, d):
    """Rational orthogonal basis of the complement of span(vectors).

    Unnormalised Gram-Schmidt: first the given vectors, then the standard
    basis in order, keeping every vector that survives the orthogonalisation.
    """
    basis = []
    for v in vectors:
        w = list(v)
        for b, bb in basis:
            f = dot(w, b) / bb
            if f:
                w = [x - f * y for x, y in zip(w, b)]
        if not any(w):
            raise DegenerateError("degenerate-flat", "flat directions are dependent")
        basis.append((w, dot(w, w)))
    comp = []
    for i in range(d):
        w = [Fraction(int(i == j)) for j in range(d)]
        for b, bb in basis + comp:
            f = dot(w, b) / bb
            if f:
                w = [x - f * y for x, y in zip(w, b)]
        if any(w):
            comp.append((w, dot(w, w)))
        if len(comp) + len(basis) == d:
            break
    return comp


def project_orthogonal(points: Sequence[Point], flat: AffineFlat) -> list[Point]:
    """Orthogonal projection along ``flat`` onto its complement R^(d - rank).

    The whole flat collapses to the origin of the image.
    """
    d = len(flat.basepoint)
    if flat.rank >= d:
        raise GeometryError("dimension", "flat must have rank below d")
    for p in points:
        if p.dim != d:
            raise GeometryError("dimension", f"point {p.id} has dimension {p.dim}")
    dirs = [[as_fraction(c) for c in v] for v in flat.directions]
    if rank(dirs) != len(dirs):
        raise DegenerateError("degenerate-flat", "flat directions are dependent")
    comp = _complement_basis(dirs, d)
    base = flat.basepoint
    out = []
    for p in points:
        diff = [a - b for a, b in zip(p.coords, base)]
        out.append(Point(p.id, tuple(Fraction(dot(diff, b)) / bb for b, bb in comp)))
    return out


def plane_frame(plane: Hyperplane):
    """Origin and orthogonal basis used to coordinatise a hyperplane."""
    n = [as_fraction(c) for c in plane.normal]
    nn = dot(n, n)
    if nn == 0:
        raise DegenerateError("degenerate-flat", "zero normal")
    origin = [c * plane.offset / nn for c in n]
    # complement of the normal direction
    comp = _complement_basis([n], len(n))
    return origin, comp


def central_project(points: Sequence[Point], apex: Point, planes: Sequence[Hyperplane]):
    """Project every point from ``apex`` onto the first plane its ray meets.

    Returns one list per plane of image points (same ids) in the plane's own
    (d-1)-dimensional coordinates.
    """
    d = apex.dim
    frames = []
    for pl in planes:
        if len(pl.normal) != d:
            raise GeometryError("dimension", "plane dimension mismatch")
        if pl.side(apex.coords) == 0:
            raise GeometryError("bad-plane-choice", "apex lies on a projection plane")
        frames.append(plane_frame(pl))
    out = [[] for _ in planes]
    for p in points:
        if p.dim != d:
            raise GeometryError("dimension", f"point {p.id} has dimension {p.dim}")
        if p.coords == apex.coords:
            raise DegenerateError("not-general-position", "point coincides with the apex")
        v = [a - b for a, b in zip(p.coords, apex.coords)]
        best = None
        for k, pl in enumerate(planes):
            den = dot(pl.normal, v)
            if den == 0:
                continue
            s = (pl.offset - dot(pl.normal, apex.coords)) / den
            if s > 0 and (best is None or s < best[0]):
                best = (s, k)
        if best is None:
            raise GeometryError("bad-plane-choice", f"ray to point {p.id} meets no plane")
        s, k = best
        img = [a + s * b for a, b in zip(apex.coords, v)]
        origin, comp = frames[k]
        diff = [a - b for a, b in zip(img, origin)]
        out[k].append(Point(p.id, tuple(Fraction(dot(diff, b)) / bb for b, bb in comp)))
    return out


def direction_sequence(d: int):
    """Deterministic stream of rational directions in R^d.

    Moment curve directions first, then a small lattice sweep; used wherever
    a generic direction is needed and candidates are re-sampled on failure.
    """
    t = 1
    while True:
        yield tuple(Fraction(t) ** i for i in range(d))
        yield tuple(Fraction(1 - 2 * t, 2) ** i for i in range(d))
        t += 1
