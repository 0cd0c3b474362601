"""Facet orders inside a simplex and triangulations touching the hull often.

For a facet F of the container simplex, ``p <_F q`` when p lies in the
interior of Conv(F + q). Chains of this order can be inserted one inside the
other, which makes many simplices keep a container vertex.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .bounds import Bound, SizeCertificate, c_const, certify, int_root_ceil, rational_bound
from .errors import PreconditionError
from .geometry import Point, SimplexTester, check_points, dot, integer_table
from .hull import build_hull
from .star import star_cells
from .triangulation import SimplicialComplex, Triangulator, convex_big_triangulation, make_complex


@dataclass
class FacetOrder:
    facet: frozenset
    elements: tuple
    above: dict          # id -> set of ids strictly greater

    def less(self, p, q) -> bool:
        return q in self.above[p]

    def is_chain(self, ids) -> bool:
        ids = list(ids)
        return all(self.less(a, b) or self.less(b, a)
                   for i, a in enumerate(ids) for b in ids[i + 1:])

    def is_antichain(self, ids) -> bool:
        ids = list(ids)
        return not any(self.less(a, b) or self.less(b, a)
                       for i, a in enumerate(ids) for b in ids[i + 1:])


def facet_order(table, container, facet, elements) -> FacetOrder:
    facet = frozenset(facet)
    fverts = [table[v] for v in sorted(facet)]
    above = {p: set() for p in elements}
    for q in elements:
        t = SimplexTester(fverts + [table[q]])
        for p in elements:
            if p != q and t.strictly_inside(table[p]):
                above[p].add(q)
    return FacetOrder(facet, tuple(sorted(elements)), above)


def _levels(order: FacetOrder, ids):
    """Mirsky levels: length of the longest chain ending at each element."""
    ids = set(ids)
    level = {}

    def depth(x):
        if x in level:
            return level[x]
        below = [y for y in ids if x in order.above[y]]
        level[x] = 1 + max((depth(y) for y in below), default=0)
        return level[x]

    for x in sorted(ids):
        depth(x)
    return level


def longest_chain(order: FacetOrder, ids) -> list:
    ids = sorted(set(ids))
    if not ids:
        return []
    lv = _levels(order, ids)
    top = max(ids, key=lambda x: (lv[x], -x))
    chain = [top]
    while lv[chain[-1]] > 1:
        cur = chain[-1]
        prev = min(y for y in ids if cur in order.above[y] and lv[y] == lv[cur] - 1)
        chain.append(prev)
    return list(reversed(chain))


def _ceil_sqrt(m: int) -> int:
    return int_root_ceil(m, 1)


@dataclass
class ChainResult:
    chain: list
    facet: frozenset
    trace: list = field(default_factory=list)
    claim_held: bool = True


def dilworth_chain(table, container: Sequence[int], interior: Sequence[int]) -> ChainResult:
    """Cascade through facets F_{d+1}, ..., F_3 keeping either a chain of
    length at least the square root or a large antichain; the last antichain
    is checked to be a chain for F_2."""
    cont = sorted(container)
    d = len(cont) - 1
    F = {i + 1: frozenset(v for v in cont if v != cont[i]) for i in range(d + 1)}
    cur = sorted(interior)
    trace = []
    if not cur:
        return ChainResult([], F[d + 1], trace)
    for i in range(d + 1, 2, -1):
        order = facet_order(table, cont, F[i], cur)
        ch = longest_chain(order, cur)
        need = _ceil_sqrt(len(cur))
        trace.append({"facet": i, "size": len(cur), "chain": len(ch), "need": need})
        if len(ch) >= need:
            return ChainResult(ch, F[i], trace)
        lv = _levels(order, cur)
        by_level = {}
        for x in cur:
            by_level.setdefault(lv[x], []).append(x)
        best = max(sorted(by_level), key=lambda k: len(by_level[k]))
        cur = sorted(by_level[best])
    order = facet_order(table, cont, F[2], cur)
    if order.is_chain(cur):
        trace.append({"facet": 2, "size": len(cur), "chain": len(cur)})
        return ChainResult(longest_chain(order, cur), F[2], trace)
    # the antichain claim failed on this input; keep the better of F_2, F_1
    o1 = facet_order(table, cont, F[1], cur)
    c2, c1 = longest_chain(order, cur), longest_chain(o1, cur)
    trace.append({"facet": 2, "size": len(cur), "chain": len(c2), "claim": False})
    if len(c1) > len(c2):
        return ChainResult(c1, F[1], trace, False)
    return ChainResult(c2, F[2], trace, False)


@dataclass(frozen=True)
class OrderResult:
    complex: SimplicialComplex
    touching: int
    chain: tuple
    facet: frozenset
    certificate: SizeCertificate


def _touching(tops, hull_ids) -> int:
    return sum(1 for s in tops if s & hull_ids)


def order_cells(table, container, interior):
    """Insert a long facet chain (largest first) into the container simplex,
    then refine every cell with the simplex-hull star pinned at one of its
    container vertices. Returns (tops, chain result)."""
    cont = sorted(container)
    d = len(cont) - 1
    res = dilworth_chain(table, cont, interior)
    tr = Triangulator([], d, table=table)
    tr.start(cont)
    for p in reversed(res.chain):
        tr.insert(p)
    placed = set(res.chain) | set(cont)
    rest = [x for x in sorted(interior) if x not in placed]
    cells = sorted(tr.simplices, key=sorted)
    testers = [(s, SimplexTester([table[v] for v in sorted(s)])) for s in cells]
    buckets = {s: [] for s in cells}
    for x in rest:
        for s, t in testers:
            if t.strictly_inside(table[x]):
                buckets[s].append(x)
                break
        else:
            raise AssertionError(f"point {x} not located in any cell")
    tops = []
    cset = set(cont)
    for s in cells:
        pin = min(s & cset)
        tops.extend(star_cells(table, s, buckets[s], pin))
    return tops, res


def order_lemma_simplex(points: Sequence[Point]) -> OrderResult:
    """Triangulation of a point set whose hull is a simplex in which at least
    (d-1)eta + r + 1 simplices have a hull vertex (eta interior points, r the
    chain length)."""
    d = check_points(points)
    hull = build_hull(points)
    if len(hull.vertices) != d + 1:
        raise PreconditionError("hull-not-simplex", f"hull has {len(hull.vertices)} vertices")
    table = integer_table(points)
    eta = len(hull.interior)
    tops, res = order_cells(table, hull.vertices, sorted(hull.interior))
    K = make_complex(d, tops, "order")
    t = _touching(K.top_simplices, hull.vertices)
    r = len(res.chain)
    head = Bound("(d-1)eta+eta^(2^(1-d))+1", Fraction((d - 1) * eta + 1), "root", Fraction(1), eta, d - 1)
    cert = certify(t, rational_bound("(d-1)eta+r+1", (d - 1) * eta + r + 1),
                   headline=head.satisfied_by(t), chain=r, eta=eta,
                   chain_need=int_root_ceil(eta, d - 1), claim_held=res.claim_held, trace=res.trace)
    return OrderResult(K, t, tuple(res.chain), res.facet, cert)


def generalized_order_lemma(points: Sequence[Point], hull=None) -> OrderResult:
    """Triangulate the hull vertices, then run the simplex order construction
    inside every cell. Counts simplices having a vertex on the hull."""
    d = check_points(points)
    by_id = {p.id: p for p in points}
    hull = hull or build_hull(points)
    h = len(hull.vertices)
    n = len(points)
    table = integer_table(points)
    hv = sorted(hull.vertices)
    if d > 2 and h > d * (d + 1):
        K0, _ = convex_big_triangulation([by_id[i] for i in hv])
        cells = sorted(K0.top_simplices, key=sorted)
    else:
        tr = Triangulator([], d, table=table)
        tr.start(hv[: d + 1])
        for pid in hv[d + 1:]:
            tr.insert(pid)
        cells = sorted(tr.simplices, key=sorted)
    testers = [(s, SimplexTester([table[v] for v in sorted(s)])) for s in cells]
    buckets = {s: [] for s in cells}
    for x in sorted(hull.interior):
        for s, t in testers:
            if t.strictly_inside(table[x]):
                buckets[s].append(x)
                break
        else:
            raise AssertionError(f"point {x} not located in any cell")
    tops = []
    chains = []
    claim = True
    for s in cells:
        sub, res = order_cells(table, s, buckets[s])
        tops.extend(sub)
        chains.append(len(res.chain))
        claim = claim and res.claim_held
    K = make_complex(d, tops, "generalized-order")
    t = _touching(K.top_simplices, hull.vertices)
    tau = len(cells)
    internal = (d - 1) * (n - h) + sum(chains) + tau
    cd = c_const(d)
    head = Bound("(d-1)n+(n-h)^(2^(1-d))+2h-c_d", Fraction((d - 1) * n + 2 * h - cd),
                 "root", Fraction(1), n - h, d - 1)
    cert = certify(t, rational_bound("(d-1)(n-h)+sum r_i+tau", internal),
                   headline=head.satisfied_by(t), h=h, cells=tau, chains=chains,
                   claim_held=claim, tau_bound=(d + 1) * h - cd)
    return OrderResult(K, t, (), frozenset(), cert)
