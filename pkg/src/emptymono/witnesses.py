"""Empty monochromatic simplices from pinned complexes on the largest class.

Every construction builds, for each pin X inside the largest color class,
a complex whose simplices all contain X and are interior-disjoint. A point of
another color spoils at most one of them, so the survivors are empty
monochromatic witnesses. Witness families are deduplicated by vertex set and
each survivor is re-checked against the whole set by brute force.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Sequence

from .bounds import Bound, SizeCertificate, c_const, certify, rational_bound
from .coloring import ColoredPointSet, discrepancy
from .errors import GeometryError, PreconditionError
from .geometry import SimplexTester, integer_table
from .hull import build_hull, one_skeleton
from .star import fan_2d, star_3d, star_subset
from .triangulation import Triangulator, pulling_triangulation


@dataclass(frozen=True)
class WitnessReport:
    simplices: tuple          # sorted tuples of ids
    color: int | None
    empty_verified: bool
    bound: SizeCertificate | None
    disjoint: bool = False
    regime: str = ""
    details: dict = field(default_factory=dict, compare=False)

    @property
    def count(self) -> int:
        return len(self.simplices)

    def to_json(self) -> dict:
        from .bounds import _jsonable
        return {"count": self.count, "color": self.color, "empty_verified": self.empty_verified,
                "disjoint": self.disjoint, "regime": self.regime,
                "certificate": self.bound.to_json() if self.bound else None,
                "simplices": [list(s) for s in self.simplices],
                "details": _jsonable(self.details)}


class EmptinessOracle:
    """Brute-force emptiness test of simplices against a whole point set."""

    def __init__(self, points):
        self.table = integer_table(points)
        self.ids = sorted(self.table)

    def is_empty(self, simplex) -> bool:
        s = tuple(sorted(simplex))
        t = SimplexTester([self.table[v] for v in s])
        for i in self.ids:
            if i not in s and t.strictly_inside(self.table[i]):
                return False
        return True

    def survivors(self, simplices):
        return [s for s in simplices if self.is_empty(s)]


def _canon(simplices) -> tuple:
    return tuple(sorted(set(tuple(sorted(s)) for s in simplices)))


def monochromatic(S: ColoredPointSet, simplex) -> bool:
    return len({S.colors[v] for v in simplex}) == 1


def _pins_regime(d: int, k: int):
    if k == 2 and d == 2:
        return "fan", 1
    if k == 2 and d >= 3:
        return "subset-2color", d - 1
    if k == 3 and d == 3:
        return "star-3d", 1
    if k == 3 and d == 4:
        return "k3-d4", 2
    if k == 3 and d > 4:
        return "subset-d-2", d - 2
    if 3 < k <= d:
        return "subset-general", d - k + 1
    raise PreconditionError("no-regime", f"no discrepancy construction for k={k}, d={d}")


def _pinned_for(regime, M, X, hull_M):
    if regime == "fan":
        return fan_2d(M, X[0]).base.top_simplices
    if regime == "star-3d":
        return star_3d(M, X[0]).base.top_simplices
    return star_subset(M, X, hull=hull_M).base.top_simplices


def _pulling_star(M, pid, hull_M, table):
    """Pulling triangulation of the hull vertices plus p, then the remaining
    points inserted; returns the simplices containing p."""
    by_id = {p.id: p for p in M}
    base_ids = sorted(set(hull_M.vertices) | {pid})
    K = pulling_triangulation([by_id[i] for i in base_ids], pid,
                              hull=hull_M if pid in hull_M.vertices else None)
    tr = Triangulator([], M[0].dim, table=table)
    for s in K.top_simplices:
        tr.add(s)
    for i in sorted(set(by_id) - set(base_ids)):
        tr.insert(i)
    return [s for s in tr.simplices if pid in s]


def discrepancy_witnesses(S: ColoredPointSet, *, max_pins: int | None = None) -> WitnessReport:
    """Empty monochromatic d-simplices driven by the discrepancy.

    Pins range over subsets of the largest class (size depends on k and d);
    a certificate compares the deduplicated count with the per-pin
    accounting and, where one exists, the closed-form regime bound.
    """
    d, k, n = S.dim, S.k, S.n
    regime, r = _pins_regime(d, k)
    st = discrepancy(S)
    delta = st.delta
    M = S.class_of(st.smax)
    m = len(M)
    others = n - m
    oracle = EmptinessOracle(S.points)
    details = {"delta": delta, "smax": m, "pin_size": r}
    if m < d + 1 or (regime == "star-3d" and m < 4):
        cert = certify(0, rational_bound("0", 0))
        return WitnessReport((), st.smax, True, cert, False, regime, {**details, "note": "class too small"})
    table_M = integer_table(M)
    hull_M = build_hull(M)
    found = set()
    per_pin = []
    skipped = 0
    case = None
    if regime == "k3-d4":
        f1 = len({frozenset(e) for f in hull_M.facets for e in itertools.combinations(f.vertices, 2)})
        case = 1 if 4 * f1 < m * m else 2
        details["hull_edges"] = f1
        details["case"] = case
    if case == 2:
        pins = [(p.id,) for p in M]
        r = 1
    else:
        pins = list(itertools.combinations(sorted(p.id for p in M), r))
    if max_pins is not None:
        pins = pins[:max_pins]
    for X in pins:
        try:
            if case == 2:
                tops = _pulling_star(M, X[0], hull_M, table_M)
            elif regime in ("subset-d-2", "k3-d4"):
                if any(set(X) <= f.vertices for f in hull_M.facets):
                    skipped += 1
                    continue
                tops = _pinned_for(regime, M, X, hull_M)
            else:
                tops = _pinned_for(regime, M, X, hull_M)
        except GeometryError as e:
            if getattr(e, "code", "") == "pin-extremal":
                skipped += 1
                continue
            raise
        good = oracle.survivors(tops)
        per_pin.append((len(tops), len(good)))
        found.update(tuple(sorted(s)) for s in good)
    wits = _canon(found)
    details["pins"] = len(per_pin)
    details["skipped_pins"] = skipped
    # each pinned family is interior-disjoint: another point spoils at most one
    killed_ok = all(g >= t - others for t, g in per_pin)
    over = comb(d + 1, r)
    internal = Fraction(sum(max(t - others, 0) for t, _ in per_pin), over)
    details["per_pin_kill_bound"] = killed_ok
    details["overcount"] = over
    if regime == "fan":
        head = rational_bound("(delta-2)(n+delta)/6", Fraction((delta - 2) * (n + delta), 6))
    elif regime == "subset-2color":
        head = rational_bound("C(|Smax|,d-1)(delta-d)/C(d+1,2)", Fraction(comb(m, d - 1) * (delta - d), comb(d + 1, 2)))
    elif regime == "star-3d":
        h = len(hull_M.vertices)
        details["pin_sum"] = str(Fraction((delta - 6) * m - 4 * h + 12, 4))
        head = rational_bound("(delta-10)n/12+3", Fraction((delta - 10) * n, 12) + 3)
        details["headline_applies"] = n >= 12
    elif regime == "subset-d-2":
        head = rational_bound("pins*(delta-2d-8)/C(d+1,d-2)", Fraction(len(per_pin) * (delta - 2 * d - 8), comb(d + 1, d - 2)))
    elif regime == "k3-d4" and case == 1:
        head = rational_bound("pins*(delta-16)/C(5,2)", Fraction(len(per_pin) * (delta - 16), 10))
    elif regime == "k3-d4":
        head = rational_bound("sum(pinned-others)/5", internal)
    else:
        cd1 = c_const(d - 1)
        head = Bound("C(|Smax|,d-k+1)(delta+log2|Smax|/(2(k-1))-2c_{d-1})/C(d+1,d-k+1)",
                     Fraction(comb(m, r) * (delta - 2 * cd1), over), "log2",
                     Fraction(comb(m, r), over * 2 * (k - 1)), m)
    details["headline"] = head.formula
    details["headline_bound"] = round(head.approx(), 6)
    details["headline_holds"] = head.satisfied_by(len(wits)) if (head.is_rational() or head.coef >= 0) else None
    cert = certify(len(wits), rational_bound("sum(pinned-others)/C(d+1,r)", internal), **details)
    ok = all(monochromatic(S, s) for s in wits)
    return WitnessReport(wits, st.smax, ok, cert, len(per_pin) <= 1, regime, details)
