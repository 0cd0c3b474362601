"""Triangulations with many simplices sharing a fixed pin.

The pin is a single point or a small subset X; the pinned subcomplex is the
set of top simplices containing all of X.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .bounds import Bound, SizeCertificate, c_const, certify, rational_bound
from .errors import DegenerateError, GeometryError, PreconditionError
from .geometry import (AffineFlat, Hyperplane, Point, SimplexTester, central_project, check_points,
                       direction_sequence, dot, int_hyperplane, integer_table, project_orthogonal)
from .hull import build_hull, degrees, is_face_of_hull
from .triangulation import SimplicialComplex, make_complex, pulling_triangulation, dn_log_triangulation


@dataclass(frozen=True)
class PinnedComplex:
    base: SimplicialComplex          # top simplices all containing the pin
    pin: frozenset
    certificate: SizeCertificate
    triangulation: SimplicialComplex | None = None

    @property
    def size(self) -> int:
        return self.base.size


def _pinned(full: SimplicialComplex, pin, cert, keep_full=True) -> PinnedComplex:
    return PinnedComplex(full.containing(pin), frozenset(pin), cert, full if keep_full else None)


# ---------------------------------------------------------------- simplex hull

def star_cells(table, container, interior, pin):
    """Triangulate the points ``interior`` inside simplex ``container``.

    Repeatedly insert the interior point nearest to the facet opposite the
    pin (smallest barycentric weight of the pin, ties by id). The cell
    opposite the pin becomes empty and recursion continues in the d cells
    that keep the pin. Returns the list of top simplices.
    """
    out = []
    stack = [(tuple(sorted(container)), list(interior))]
    while stack:
        cell, inner = stack.pop()
        if not inner:
            out.append(frozenset(cell))
            continue
        tester = SimplexTester([table[v] for v in cell])
        k = cell.index(pin)
        n, off = tester.planes[k]
        q = min(inner, key=lambda x: (dot(n, table[x]) - off, x))
        rest = [x for x in inner if x != q]
        subs = []
        for v in cell:
            sub = tuple(sorted(q if w == v else w for w in cell))
            subs.append((v, sub, SimplexTester([table[w] for w in sub])))
        buckets = {sub: [] for _, sub, _ in subs}
        for x in rest:
            for v, sub, t in subs:
                if t.strictly_inside(table[x]):
                    buckets[sub].append(x)
                    break
            else:
                raise DegenerateError("not-general-position", f"point {x} lies on an inner face")
        for v, sub, _ in subs:
            if v == pin:
                if buckets[sub]:
                    raise AssertionError("cell opposite the pin must be empty")
                out.append(frozenset(sub))
            else:
                stack.append((sub, buckets[sub]))
    return out


def star_in_simplex(points: Sequence[Point], pid: int) -> PinnedComplex:
    """Pinned triangulation when the hull is a simplex with ``pid`` a vertex.

    Exactly (d-1)n - d^2 + 2 simplices contain the pin.
    """
    d = check_points(points)
    hull = build_hull(points)
    if len(hull.vertices) != d + 1:
        raise PreconditionError("hull-not-simplex", f"hull has {len(hull.vertices)} vertices")
    if pid not in hull.vertices:
        raise PreconditionError("hull-not-simplex", f"pin {pid} is not a hull vertex")
    table = integer_table(points)
    tops = star_cells(table, hull.vertices, sorted(hull.interior), pid)
    full = make_complex(d, tops, "star-simplex")
    n = len(points)
    pinned = sum(1 for s in tops if pid in s)
    cert = certify(pinned, rational_bound("(d-1)n-d^2+2", (d - 1) * n - d * d + 2))
    return _pinned(full, {pid}, cert)


# ---------------------------------------------------------------- planar fan

def _angle_key(p):
    def cmp(a, b):
        ax, ay = a[1][0] - p[0], a[1][1] - p[1]
        bx, by = b[1][0] - p[0], b[1][1] - p[1]
        ha = 0 if (ay > 0 or (ay == 0 and ax > 0)) else 1
        hb = 0 if (by > 0 or (by == 0 and bx > 0)) else 1
        if ha != hb:
            return ha - hb
        c = ax * by - ay * bx
        if c == 0:
            raise DegenerateError("not-general-position", f"points {a[0]} and {b[0]} are collinear with the pin")
        return -1 if c > 0 else 1
    return functools.cmp_to_key(cmp)


def fan_2d(points: Sequence[Point], pid: int) -> PinnedComplex:
    """Triangles spanned by the pin and angularly consecutive points.

    Consecutive pairs whose angle at the pin is below pi give empty triangles:
    n-2 of them when the pin is a hull vertex, n-1 when it is interior.
    """
    d = check_points(points)
    if d != 2:
        raise GeometryError("dimension", "fan_2d is planar")
    table = integer_table(points)
    if pid not in table:
        raise PreconditionError("missing-pin", f"pin {pid} not in the set")
    if len(points) < 3:
        raise PreconditionError("underdetermined", "need at least 3 points")
    p = table[pid]
    others = sorted(((i, c) for i, c in table.items() if i != pid), key=_angle_key(p))
    tops = []
    m = len(others)
    for i in range(m):
        a, b = others[i], others[(i + 1) % m]
        cr = (a[1][0] - p[0]) * (b[1][1] - p[1]) - (a[1][1] - p[1]) * (b[1][0] - p[0])
        if cr > 0:
            tops.append(frozenset((pid, a[0], b[0])))
        elif cr == 0:
            raise DegenerateError("not-general-position", "three collinear points")
    tops = list(dict.fromkeys(tops))
    full = make_complex(2, tops, "fan")
    n = len(points)
    cert = certify(len(tops), rational_bound("n-2", n - 2), pin_interior=len(tops) == n - 1)
    return PinnedComplex(full, frozenset({pid}), cert, None)


# ---------------------------------------------------------------- three dimensions

def star_3d(points: Sequence[Point], pid: int) -> PinnedComplex:
    """Pulling triangulation of the hull (plus the pin) refined inside every
    tetrahedron by the simplex-hull construction pinned at ``pid``."""
    d = check_points(points)
    if d != 3:
        raise GeometryError("dimension", "star_3d needs d = 3")
    by_id = {p.id: p for p in points}
    if pid not in by_id:
        raise PreconditionError("missing-pin", f"pin {pid} not in the set")
    n = len(points)
    if n < 4:
        raise PreconditionError("underdetermined", "need at least 4 points")
    hull = build_hull(points)
    base_ids = set(hull.vertices) | {pid}
    base_pts = [by_id[i] for i in sorted(base_ids)]
    interior_pin = pid not in hull.vertices
    base = pulling_triangulation(base_pts, pid, hull=None if interior_pin else hull)
    table = integer_table(points)
    leftover = sorted(set(by_id) - base_ids)
    testers = [(s, SimplexTester([table[v] for v in sorted(s)])) for s in sorted(base.top_simplices, key=sorted)]
    buckets = {s: [] for s, _ in testers}
    for x in leftover:
        for s, t in testers:
            if t.strictly_inside(table[x]):
                buckets[s].append(x)
                break
        else:
            raise DegenerateError("not-general-position", f"point {x} lies on a face of the pulling triangulation")
    tops = []
    for s, _ in testers:
        tops.extend(star_cells(table, s, buckets[s], pid))
    full = make_complex(3, tops, "star-3d")
    pinned = sum(1 for s in tops if pid in s)
    if interior_pin:
        bound = rational_bound("2n-6", 2 * n - 6)
        rho = None
    else:
        rho = degrees(hull)[pid]
        bound = rational_bound("2n-rho-4", 2 * n - rho - 4)
    cert = certify(pinned, bound, pin_interior=interior_pin, rho=rho)
    return _pinned(full, {pid}, cert)


# ---------------------------------------------------------------- higher dimensions

def halving_direction(table, pid, budget=64):
    """Rational direction u with no other point on the hyperplane
    u.(x - p) = 0 and the two open sides differing by at most one point.

    Sweeps the pencil u(t) = a + t b: crossing a critical t moves exactly one
    point across, and the counts at t = -inf and t = +inf are complementary,
    so some gap between consecutive critical values is halving.
    """
    p = table[pid]
    diffs = [(i, tuple(a - b for a, b in zip(x, p))) for i, x in sorted(table.items()) if i != pid]
    m = len(diffs)
    d = len(p)
    dirs = direction_sequence(d)
    lo, hi = m // 2, (m + 1) // 2
    for _ in range(budget):
        a = next(dirs)
        b = next(dirs)
        av = [dot(a, v) for _, v in diffs]
        bv = [dot(b, v) for _, v in diffs]
        if any(x == 0 for x in av) or any(x == 0 for x in bv):
            continue
        crit = sorted(set(Fraction(-x, y) for x, y in zip(av, bv)))
        if len(crit) != m:
            continue
        cands = [crit[0] - 1] + [(u + w) / 2 for u, w in zip(crit, crit[1:])] + [crit[-1] + 1]
        for t in cands:
            u = tuple(x + t * y for x, y in zip(a, b))
            pos = sum(1 for _, v in diffs if dot(u, v) > 0)
            if pos in (lo, hi):
                return u
    raise GeometryError("bad-plane-choice", "no halving direction found within budget")


def star_highd(points: Sequence[Point], pid: int) -> PinnedComplex:
    """Pinned complex in d > 3 through a halving hyperplane at the pin.

    Other points are centrally projected from the pin onto two parallel
    planes, one on each side; each image set is triangulated in d-1
    dimensions and every (d-1)-simplex is lifted and coned to the pin.
    """
    d = check_points(points)
    if d <= 3:
        raise GeometryError("dimension", "star_highd needs d > 3")
    by_id = {p.id: p for p in points}
    if pid not in by_id:
        raise PreconditionError("missing-pin", f"pin {pid} not in the set")
    n = len(points)
    table = integer_table(points)
    u = halving_direction(table, pid)
    apex = by_id[pid]
    others = [by_id[i] for i in sorted(by_id) if i != pid]
    ua = dot(u, apex.coords)
    M = max(abs(dot(u, q.coords) - ua) for q in others) + 1
    small_side = 1 if sum(1 for q in others if dot(u, q.coords) > ua) <= (n - 1) // 2 else -1
    pi1 = Hyperplane(u, ua + small_side * M)
    pi2 = Hyperplane(u, ua - small_side * M)
    side1, side2 = central_project(others, apex, [pi1, pi2])
    tops = []
    parts = []
    bound = Fraction(0)
    for side in (side1, side2):
        if len(side) >= d:
            K, c = dn_log_triangulation(side)
            tops.extend(s | {pid} for s in K.top_simplices)
            parts.append(c)
            bound += c.bound.rational
        else:
            parts.append(None)
    full = make_complex(d, tops, "star-highd")
    cd1 = c_const(d - 1)
    head = Bound("(d-1)n+log2(n)/(2(d-1))-2c_{d-1}", Fraction((d - 1) * n - 2 * cd1),
                 "log2", Fraction(1, 2 * (d - 1)), n)
    cert = certify(len(tops), rational_bound("sum of side bounds", bound),
                   sides=[len(side1), len(side2)], parts=parts,
                   headline=head.satisfied_by(len(tops)), direction=[str(x) for x in u])
    return PinnedComplex(full, frozenset({pid}), cert, None)


# ---------------------------------------------------------------- subsets

def pin_extremal(points: Sequence[Point], X, hull=None) -> bool:
    """Whether the projection of X along its own flat is a hull vertex of
    the image, decided through the face structure of the original hull."""
    hull = hull or build_hull(points)
    return is_face_of_hull(X, hull)


def _lift(image: PinnedComplex, pin_img, X, d, provenance) -> SimplicialComplex:
    xs = frozenset(X)
    tops = [(s - {pin_img}) | xs for s in image.base.top_simplices if pin_img in s]
    return make_complex(d, tops, provenance)


def star_subset(points: Sequence[Point], X, hull=None) -> PinnedComplex:
    """Pinned complex whose simplices all contain the subset X (|X| = r).

    Project along aff(X) to R^(d-r+1), where X collapses to one point p_X,
    build a star at p_X there and lift every simplex back.
    """
    d = check_points(points)
    X = sorted(set(X))
    r = len(X)
    by_id = {p.id: p for p in points}
    if not 1 <= r <= d - 1:
        raise PreconditionError("bad-pin", f"pin size {r} must be in 1..{d - 1}")
    if any(x not in by_id for x in X):
        raise PreconditionError("missing-pin", "pin not contained in the set")
    n = len(points)
    if r == 1:
        if d == 2:
            return fan_2d(points, X[0])
        if d == 3:
            return star_3d(points, X[0])
        return star_highd(points, X[0])
    flat = AffineFlat.through([by_id[x] for x in X])
    rest = [by_id[i] for i in sorted(by_id) if i not in X]
    pin_img = X[0]
    image = project_orthogonal(rest + [by_id[pin_img]], flat)
    tdim = d - r + 1
    if r == d - 1:
        img = fan_2d(image, pin_img)
        K = _lift(img, pin_img, X, d, "star-subset")
        cert = certify(K.size, rational_bound("n-d", n - d), image=img.certificate)
    elif r == d - 2:
        hull = hull or build_hull(points)
        if is_face_of_hull(X, hull):
            raise PreconditionError("pin-extremal", f"Conv{X} is a face of the hull")
        img = star_3d(image, pin_img)
        if not img.certificate.details.get("pin_interior"):
            raise AssertionError("projected pin is extremal although Conv(X) is not a hull face")
        K = _lift(img, pin_img, X, d, "star-subset")
        cert = certify(K.size, rational_bound("2n-2d-8", 2 * n - 2 * d - 8),
                       image=img.certificate, image_points=len(image),
                       image_bound=2 * len(image) - 6)
    else:
        img = star_highd(image, pin_img)
        K = _lift(img, pin_img, X, d, "star-subset")
        cd1 = c_const(d - 1)
        head = Bound("(d-r)n+log2(n)/(2(d-r))-2c_{d-1}", Fraction((d - r) * n - 2 * cd1),
                     "log2", Fraction(1, 2 * (d - r)), n)
        cert = certify(K.size, img.certificate.bound, image=img.certificate,
                       headline=head.satisfied_by(K.size), image_dim=tdim)
    return PinnedComplex(K, frozenset(X), cert, None)
