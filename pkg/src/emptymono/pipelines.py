"""Top-level constructions for empty monochromatic simplices.

Existence from one big triangulation, a linear count from slabs, the peeling
dichotomies (many witnesses or a convex region with high discrepancy), their
lift to higher dimensions by central projection, the combined counts, the
doubling construction and a brute-force census used as ground truth.

Desk-scale inputs never reach the size thresholds under which the asymptotic
arguments close, so every pipeline runs anyway, evaluates the intermediate
inequalities exactly and says which ones held.
"""
from __future__ import annotations

import enum
import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Sequence

from .bounds import _jsonable, c_const, certify, rational_bound
from .coloring import ColoredPointSet, discrepancy
from .errors import BudgetExceeded, DegenerateError, GeometryError, PreconditionError
from .geometry import (Hyperplane, Point, SimplexTester, central_project, check_points,
                       direction_sequence, dot, integer_table, orientation)
from .hull import build_hull, point_in_hull
from .lp import interiors_intersect
from .order import generalized_order_lemma, order_lemma_simplex
from .star import _angle_key
from .triangulation import dn_log_triangulation
from .witnesses import EmptinessOracle, WitnessReport, _canon, discrepancy_witnesses, monochromatic


# ---------------------------------------------------------------- exact thresholds

def _ge_root(lhs, x, p: int, scale=1) -> bool:
    """lhs >= x**(1/p) / scale, decided without floating point."""
    v = Fraction(lhs) * Fraction(scale)
    if v < 0:
        return False
    return v ** p >= Fraction(x)


def _lt_root(lhs, x, p: int, scale=1) -> bool:
    """lhs < x**(1/p) / scale."""
    return not _ge_root(lhs, x, p, scale)


def _ceil_power(n: int, num: int, den: int) -> int:
    """Smallest integer r with 8r >= n**(num/den)."""
    r = max(0, int(n ** (num / den) / 8) - 2)
    while (8 * r) ** den < n ** num:
        r += 1
    return r


# ---------------------------------------------------------------- census

DEFAULT_CENSUS = {2: comb(60, 3), 3: comb(32, 4), 4: comb(24, 5)}


def census_budget(d: int) -> int:
    return DEFAULT_CENSUS.get(d, 50_000)


def census_in_budget(n: int, d: int, budget: int | None = None) -> bool:
    return comb(n, d + 1) <= (census_budget(d) if budget is None else budget)


@dataclass(frozen=True)
class CensusResult:
    per_color: dict
    total: int
    examined: int
    simplices: dict = field(default_factory=dict, compare=False)

    def to_json(self, with_simplices=False) -> dict:
        out = {"per_color": _jsonable(self.per_color), "total": self.total, "examined": self.examined}
        if with_simplices:
            out["simplices"] = {str(c): [list(s) for s in v] for c, v in sorted(self.simplices.items())}
        return out


def _census_block(args):
    table, ids_by_color, d, color, firsts = args
    everyone = sorted(table)
    found = []
    members = ids_by_color
    for a in firsts:
        rest = [x for x in members if x > a]
        for tail in itertools.combinations(rest, d):
            s = (a,) + tail
            try:
                t = SimplexTester([table[v] for v in s])
            except DegenerateError:
                continue          # flat subsets span no simplex
            if not any(t.strictly_inside(table[i]) for i in everyone if i not in s):
                found.append(s)
    return color, found


def census(S: ColoredPointSet, budget: int | None = None, jobs: int = 1) -> CensusResult:
    """Count empty monochromatic d-simplices by exhaustive enumeration."""
    d, n = S.dim, S.n
    if not census_in_budget(n, d, budget):
        raise BudgetExceeded("census-too-large", f"C({n},{d + 1}) subsets exceed the census budget",
                             subsets=comb(n, d + 1))
    table = integer_table(S.points)
    tasks = []
    for c in range(S.k):
        mem = sorted(p.id for p in S.class_of(c))
        if len(mem) < d + 1:
            continue
        heads = mem[: len(mem) - d]
        chunks = max(1, jobs)
        for b in range(chunks):
            part = heads[b::chunks]
            if part:
                tasks.append((table, mem, d, c, part))
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(_census_block, tasks))
    else:
        results = [_census_block(t) for t in tasks]
    found = {c: [] for c in range(S.k)}
    for c, f in results:
        found[c].extend(f)
    sims = {c: tuple(sorted(v)) for c, v in found.items()}
    per = {c: len(v) for c, v in sims.items()}
    examined = sum(comb(sz, d + 1) for sz in S.class_sizes().values())
    return CensusResult(per, sum(per.values()), examined, sims)


# ---------------------------------------------------------------- outcomes

class Kind(enum.Enum):
    WITNESSES = "WITNESSES"
    CONVEX_SET = "CONVEX_SET"


@dataclass(frozen=True)
class DichotomyOutcome:
    kind: Kind
    witnesses: WitnessReport | None = None
    region: tuple | None = None
    region_delta: int | None = None
    trigger: str = ""
    threshold: str = ""
    cut_out: bool | None = None
    asymptotic: bool = False
    rounds: tuple = ()
    details: dict = field(default_factory=dict, compare=False)

    @property
    def region_size(self):
        return None if self.region is None else len(self.region)

    def to_json(self) -> dict:
        return {"kind": self.kind.value,
                "witnesses": self.witnesses.to_json() if self.witnesses else None,
                "region": list(self.region) if self.region is not None else None,
                "region_size": self.region_size, "region_delta": self.region_delta,
                "trigger": self.trigger, "threshold": self.threshold, "cut_out": self.cut_out,
                "asymptotic_regime": "met" if self.asymptotic else "unmet",
                "rounds": _jsonable(list(self.rounds)), "details": _jsonable(self.details)}


def _delta(S: ColoredPointSet, ids) -> int:
    return discrepancy(S.restrict(ids)).delta


def closure(S: ColoredPointSet, ids) -> tuple:
    """S intersected with the convex hull of the given points."""
    ids = sorted(set(ids))
    if len(ids) <= S.dim:
        return tuple(ids)
    by_id = S.by_id()
    try:
        hull = build_hull([by_id[i] for i in ids])
    except DegenerateError:
        return tuple(ids)
    inside = set(ids)
    for p in S.points:
        if p.id not in inside and point_in_hull(hull, p.coords):
            inside.add(p.id)
    return tuple(sorted(inside))


def is_cut_out(S: ColoredPointSet, ids) -> bool:
    return closure(S, ids) == tuple(sorted(set(ids)))


def _per_color(S: ColoredPointSet, simplices) -> dict:
    out = {}
    for s in simplices:
        c = S.colors[s[0]]
        out[c] = out.get(c, 0) + 1
    return dict(sorted(out.items()))


def _report(S, simplices, bound, regime, details, color=None) -> WitnessReport:
    """Re-verify emptiness in the whole set and wrap the simplices."""
    wits = _canon(simplices)
    oracle = EmptinessOracle(S.points)
    ok = all(oracle.is_empty(s) and monochromatic(S, s) for s in wits)
    cols = {S.colors[s[0]] for s in wits}
    if color is None and len(cols) == 1:
        color = next(iter(cols))
    details = {**details, "per_color": _per_color(S, wits)}
    return WitnessReport(wits, color, ok, certify(len(wits), bound, **details), True, regime, details)


def _convex(S, region, delta, trigger, threshold, asymptotic, rounds, details, partial=()):
    rep = None
    if partial:
        rep = _report(S, partial, rational_bound("0", 0), "partial", {})
    return DichotomyOutcome(Kind.CONVEX_SET, rep, tuple(sorted(region)), delta, trigger, threshold,
                            is_cut_out(S, region), asymptotic, tuple(rounds), details)


# ---------------------------------------------------------------- existence and slabs

def exists_empty_mono(S: ColoredPointSet, census_fallback: bool = True,
                      budget: int | None = None) -> WitnessReport:
    """One empty monochromatic d-simplex from a large triangulation of the
    biggest class: every other point spoils at most one of its cells."""
    d, n = S.dim, S.n
    if d <= 2 or S.k != d + 1:
        raise PreconditionError("bad-regime", f"needs d > 2 and k = d+1 (got d={d}, k={S.k})")
    st = discrepancy(S)
    M = S.class_of(st.smax)
    killers = n - len(M)
    cd = c_const(d)
    details = {"smax": len(M), "killers": killers,
               "asymptotic_regime": n >= (d + 1) * 4 ** (d * (cd + 1))}
    cells, survivors = [], []
    if len(M) >= d + 1:
        K, cert = dn_log_triangulation(M)
        cells = K.sorted_simplices()
        oracle = EmptinessOracle(S.points)
        survivors = [tuple(sorted(s)) for s in cells if oracle.is_empty(s)]
        details.update(cells=len(cells), branch=cert.details.get("branch"),
                       triangulation_bound=cert.to_json())
    details["survivors"] = len(survivors)
    details["guaranteed"] = killers < len(cells)
    details["kill_bound_ok"] = len(survivors) >= len(cells) - killers
    if survivors:
        details["source"] = "construction"
        details["inconclusive"] = False
        return _report(S, [survivors[0]], rational_bound("1", 1), "existence", details)
    details["inconclusive"] = True
    details["source"] = "none"
    if census_fallback and census_in_budget(n, d, budget):
        cen = census(S, budget)
        details["census_total"] = cen.total
        for c in sorted(cen.simplices):
            if cen.simplices[c]:
                details["source"] = "census"
                return _report(S, [cen.simplices[c][0]], rational_bound("0", 0), "existence", details)
    return _report(S, [], rational_bound("0", 0), "existence", details)


def sweep_direction(points: Sequence[Point]):
    """First direction of the deterministic stream giving distinct heights."""
    d = check_points(points)
    for k, u in enumerate(direction_sequence(d)):
        vals = [dot(u, p.coords) for p in points]
        if len(set(vals)) == len(vals):
            return u
        if k > 10_000:
            raise DegenerateError("no-sweep-direction", "could not separate the points")


def slabs(S: ColoredPointSet, mu: int, u=None) -> list:
    """Consecutive groups of mu points along a sweep; the remainder joins the last."""
    u = u or sweep_direction(S.points)
    order = [p.id for p in sorted(S.points, key=lambda p: (dot(u, p.coords), p.id))]
    m = max(1, len(order) // mu)
    out = [order[t * mu:(t + 1) * mu] for t in range(m)]
    out[-1] = order[(m - 1) * mu:]
    return out


def linear_witnesses(S: ColoredPointSet, mu: int | None = None, budget: int | None = None) -> WitnessReport:
    """One witness per slab of mu points; each is re-checked against all of S."""
    d, n = S.dim, S.n
    if d <= 2 or S.k != d + 1:
        raise PreconditionError("bad-regime", f"needs d > 2 and k = d+1 (got d={d}, k={S.k})")
    u = sweep_direction(S.points)

    def attempt(m):
        got = []
        for sl in slabs(S, m, u):
            rep = exists_empty_mono(S.restrict(sl), True, budget)
            if not rep.simplices:
                return None
            got.append((rep.simplices[0], rep.details["source"]))
        return got

    chosen, got = None, None
    cands = [mu] if mu is not None else list(range(d + 1, n + 1))
    for m in cands:
        got = attempt(m)
        if got is not None:
            chosen = m
            break
    if chosen is None:
        return _report(S, [], rational_bound("0", 0), "slabs",
                       {"mu": mu, "slabs": n // mu if mu else 0, "discarded": 0, "feasible": False})
    oracle = EmptinessOracle(S.points)
    kept = [s for s, _ in got if oracle.is_empty(s)]
    details = {"mu": chosen, "slabs": len(got), "discarded": len(got) - len(kept), "feasible": True,
               "sources": [src for _, src in got], "direction": list(u)}
    return _report(S, kept, rational_bound("floor(n/mu)", n // chosen), "slabs", details)


# ---------------------------------------------------------------- k-color peeling

def peel_dichotomy_kcolor(S: ColoredPointSet, j: int, threshold_scale=1) -> DichotomyOutcome:
    """Peel the hull of color j round by round, counting empty simplices
    touching it, until the rounds run out or some convex region shows
    discrepancy above ntilde**(2**-d)/(d-1), ntilde = n/(3d).

    ``threshold_scale`` multiplies every exit threshold; it exists only to
    explore the round machinery at small n and is 1 by default.
    """
    d, n, k = S.dim, S.n, S.k
    if d <= 2 or k != d:
        raise PreconditionError("bad-regime", f"needs k = d > 2 (got d={d}, k={k})")
    if not 0 <= j < k:
        raise PreconditionError("bad-color", f"color {j} out of range")
    nt = Fraction(n, 3 * d)
    e = 2 ** d
    ts = Fraction(threshold_scale)
    cd = c_const(d)
    thr = f"{ts}*ntilde^(2^-d)/(d-1)" if ts != 1 else "ntilde^(2^-d)/(d-1)"
    high = lambda delta: _ge_root(delta, nt, e, Fraction(d - 1) / ts)
    regime = n >= 3 * d * (2 * cd) ** (2 ** (d - 1))
    max_rounds = _ceil_power(n, e - 1, e)
    by_id = S.by_id()
    cur = tuple(sorted(S.ids()))
    rounds, counted = [], []
    stop = "rounds"
    for i in range(1, max_rounds + 1):
        log = {"round": i, "size": len(cur)}
        if Fraction(len(cur)) < (d + 1) * nt:
            if regime:
                raise GeometryError("peel-invariant-broken", f"|S_{i}| = {len(cur)} below (d+1)ntilde")
            stop = "invariant-unmet"
            rounds.append(log)
            break
        dS = _delta(S, cur)
        log["delta_S"] = dS
        if high(dS):
            return _convex(S, cur, dS, "delta-current", thr, regime, rounds + [log], {"stop": "convex"}, counted)
        R = [x for x in cur if S.colors[x] == j]
        T_gt = lambda y: _lt_root(y, nt, e)             # y < T
        log["R"] = len(R)
        log["class-large"] = T_gt(len(cur) - d * len(R)) and Fraction(len(R)) > nt
        if len(R) < d + 1:
            stop = "class-exhausted"
            rounds.append(log)
            break
        hullR = build_hull([by_id[x] for x in R])
        H = sorted(hullR.vertices)
        X = tuple(x for x in cur if x in hullR.vertices or x in hullR.interior
                  or point_in_hull(hullR, by_id[x].coords))
        dX = _delta(S, X)
        log.update(h=len(H), X=len(X), delta_X=dX)
        if high(dX):
            return _convex(S, X, dX, "delta-class-hull", thr, regime, rounds + [log], {"stop": "convex"}, counted)
        others = len(X) - len(R)
        log["few-others-in-hull"] = T_gt(others - (d - 1) * len(R))
        log["few-outside-hull"] = _lt_root(Fraction(len(cur) - len(X), 2), nt, e)
        nxt = tuple(x for x in X if x not in hullR.vertices)
        dN = _delta(S, nxt)
        log["delta_next"] = dN
        if high(dN):
            return _convex(S, nxt, dN, "delta-next", thr, regime, rounds + [log], {"stop": "convex"}, counted)
        log["few-hull-vertices"] = _lt_root(Fraction(len(H), 2), nt, e)
        res = generalized_order_lemma([by_id[x] for x in R], hull=hullR)
        touching = [tuple(sorted(s)) for s in res.complex.top_simplices if s & hullR.vertices]
        oracle = EmptinessOracle([by_id[x] for x in X])
        good = [s for s in touching if oracle.is_empty(s)]
        internal = res.certificate.bound.rational - others
        log["touching"] = len(touching)
        log["survivors"] = len(good)
        log["round_bound"] = certify(len(good), rational_bound("touching-bound - |X\\R|", internal)).to_json()
        log["kill_bound_ok"] = len(good) >= len(touching) - others
        chains = sum(res.certificate.details["chains"])
        stated = (d - 1) * len(R) - others + chains + 2 * len(H) - cd
        log["stated_round_bound"] = stated
        log["stated_round_bound_holds"] = len(good) >= stated
        log["target_holds"] = _ge_root(len(good), nt, 2 ** (d - 1), 10)
        log["claim_held"] = res.certificate.details["claim_held"]
        # soundness: every counted simplex loses a vertex before the next round
        log["sound"] = all(set(s) & hullR.vertices for s in good) and not (set(nxt) & hullR.vertices)
        counted.extend(good)
        rounds.append(log)
        cur = nxt
    else:
        stop = "rounds"
    total = len(set(counted))
    rep = _report(S, counted, rational_bound("sum of round bounds",
                                             sum(max(Fraction(r["round_bound"]["bound"]), 0)
                                                 for r in rounds if "round_bound" in r)),
                  "peel", {"stop": stop, "max_rounds": max_rounds}, color=j)
    details = {"stop": stop, "max_rounds": max_rounds, "counted": total,
               "target": "rounds*ntilde^(2^(1-d))/10"}
    return DichotomyOutcome(Kind.WITNESSES, rep, None, None, "", thr, None, regime, tuple(rounds), details)


# ---------------------------------------------------------------- projection induction

def _apex_planes(S: ColoredPointSet, p: Point):
    """Two parallel hyperplanes enclosing S, transverse to every ray from p."""
    vecs = [tuple(a - b for a, b in zip(q.coords, p.coords)) for q in S.points if q.id != p.id]
    for u in direction_sequence(S.dim):
        if all(dot(u, v) != 0 for v in vecs):
            hs = [dot(u, q.coords) for q in S.points]
            return u, (Hyperplane(u, min(hs) - 1), Hyperplane(u, max(hs) + 1))


def project_from(S: ColoredPointSet, pid: int):
    """Central projection from a point onto the bigger of two enclosing planes."""
    by_id = S.by_id()
    p = by_id[pid]
    u, planes = _apex_planes(S, p)
    imgs = central_project([q for q in S.points if q.id != pid], p, planes)
    side = 0 if len(imgs[0]) >= len(imgs[1]) else 1
    img = imgs[side]
    colors = {q.id: S.colors[q.id] for q in img}
    return ColoredPointSet.make(img, colors, S.k, strict=False), side, u


def _project_induct(S: ColoredPointSet, j: int, base_dim: int, run_base, exit_high,
                    exit_formula: str, regime: bool):
    """Shared projection induction: exit on high discrepancy, otherwise
    project from every point of color j, recurse, and cone witnesses back."""
    d = S.dim
    if d == base_dim:
        return run_base(S)
    st = discrepancy(S)
    if exit_high(st.delta, S.n, d):
        return _convex(S, S.ids(), st.delta, "entry", exit_formula, regime, (), {"dim": d})
    mult = {}
    per_apex = []
    oracle = EmptinessOracle(S.points)
    for pid in sorted(p.id for p in S.class_of(j)):
        img, side, _ = project_from(S, pid)
        sub = _project_induct(img, j, base_dim, run_base, exit_high, exit_formula, regime)
        if sub.kind is Kind.CONVEX_SET:
            # the preimage of a region cut out in the plane is cut out by a cone
            region = tuple(sorted(sub.region))
            det = {"dim": d, "apex": pid, "image_size": img.n, "image_trigger": sub.trigger,
                   "image_delta": sub.region_delta, "image_details": sub.details}
            return _convex(S, region, _delta(S, region), f"projected:{sub.trigger}",
                           sub.threshold, regime, sub.rounds, det, list(mult))
        lifted = 0
        for s in sub.witnesses.simplices:
            t = tuple(sorted(s + (pid,)))
            if oracle.is_empty(t):
                mult[t] = mult.get(t, 0) + 1
                lifted += 1
        per_apex.append({"apex": pid, "side": side, "image_size": img.n, "lifted": lifted,
                         "image_count": sub.witnesses.count})
    total = sum(a["lifted"] for a in per_apex)
    bound = rational_bound("sum(lifted)/(d+1)", Fraction(total, d + 1))
    details = {"dim": d, "apexes": per_apex, "max_multiplicity": max(mult.values(), default=0),
               "lift_sound": all(a["lifted"] == a["image_count"] for a in per_apex)}
    rep = _report(S, list(mult), bound, "projection", details, color=j)
    return DichotomyOutcome(Kind.WITNESSES, rep, None, None, "", exit_formula, None, regime, (), details)


def project_induct_kcolor(S: ColoredPointSet, j: int, threshold_scale=1) -> DichotomyOutcome:
    """Projection induction on the dimension down to the peeling base k = d.

    A level in dimension d exits when delta >= m**(2**-d)/(k-1) for its m points.
    """
    d, k, n = S.dim, S.k, S.n
    if not 3 <= k <= d:
        raise PreconditionError("bad-regime", f"needs 3 <= k <= d (got d={d}, k={k})")
    if not 0 <= j < k:
        raise PreconditionError("bad-color", f"color {j} out of range")
    ts = Fraction(threshold_scale)
    regime = n >= 2 ** (d - k) * (3 * k * (2 * c_const(d)) ** (2 ** (k - 1)) + 1)
    high = lambda delta, m, dim: _ge_root(delta, m, 2 ** dim, Fraction(k - 1) / ts)
    return _project_induct(S, j, k, lambda T: peel_dichotomy_kcolor(T, j, ts), high,
                           "n^(2^-d)/(k-1)", regime)


def _smax_color(S: ColoredPointSet) -> int:
    return discrepancy(S).smax


def _combine(S: ColoredPointSet, out: DichotomyOutcome, label: str) -> WitnessReport:
    """Witnesses as they are, or the discrepancy construction on S cap C."""
    details = {"branch": out.kind.value, "asymptotic_regime": "met" if out.asymptotic else "unmet",
               "dichotomy": out.to_json()}
    if out.kind is Kind.WITNESSES:
        rep = out.witnesses
        return _report(S, list(rep.simplices), rep.bound.bound, label, details)
    sub = S.restrict(out.region)
    found = list(out.witnesses.simplices) if out.witnesses else []
    details["region_size"] = sub.n
    details["region_delta"] = out.region_delta
    try:
        dw = discrepancy_witnesses(sub)
    except PreconditionError as e:
        details["discrepancy_error"] = e.code
        return _report(S, found, rational_bound("0", 0), label, details)
    details["discrepancy"] = dw.to_json()
    # S cap C is cut out, so witnesses empty in the region are empty in S
    return _report(S, found + list(dw.simplices), dw.bound.bound, label, details)


def combined_kcolor(S: ColoredPointSet, j: int | None = None, threshold_scale=1) -> WitnessReport:
    d, k = S.dim, S.k
    if not 3 <= k <= d:
        raise PreconditionError("bad-regime", f"needs d >= k >= 3 (got d={d}, k={k})")
    j = _smax_color(S) if j is None else j
    return _combine(S, project_induct_kcolor(S, j, threshold_scale), "combined-kcolor")


# ---------------------------------------------------------------- two colors

def _ccw_hull(by_id, hull_ids):
    """Hull vertices of a planar set in counter-clockwise order from the
    lowest (then leftmost) one."""
    first = min(hull_ids, key=lambda i: (by_id[i].coords[1], by_id[i].coords[0]))
    rest = sorted(((i, by_id[i].coords) for i in hull_ids if i != first),
                  key=_angle_key(by_id[first].coords))
    return [first] + [i for i, _ in rest]


def peel_dichotomy_2color(S: ColoredPointSet, j: int | None = None, threshold_scale=1) -> DichotomyOutcome:
    """Remove rich points of color j (red) one per round, or exit with a
    convex region whose discrepancy reaches the cube-root thresholds."""
    d, n, k = S.dim, S.n, S.k
    if d != 2 or k != 2:
        raise PreconditionError("bad-regime", f"needs d = 2 and k = 2 (got d={d}, k={k})")
    j = _smax_color(S) if j is None else j
    ts = Fraction(threshold_scale)
    # delta >= ts * cbrt(n) / c  <=>  (c delta / ts)**3 >= n
    hi = lambda delta, c: _ge_root(delta, n, 3, Fraction(c) / ts)
    lo = lambda y, c: _lt_root(y, n, 3, c)
    by_id = S.by_id()
    table = integer_table(S.points)
    oracle = EmptinessOracle(S.points)
    cur = tuple(sorted(S.ids()))
    rounds, counted, removed = [], [], []
    stop = "rounds"
    max_rounds = n // 5
    state = {"derived": True}
    label = (lambda c: f"cbrt(n)/{c}") if ts == 1 else (lambda c: f"{ts}*cbrt(n)/{c}")

    def exit_(region, trig, c, log):
        dR = _delta(S, region)
        return _convex(S, region, dR, trig, label(c), state["derived"], rounds + [log],
                       {"stop": "convex", "removed": list(removed)}, counted)

    for i in range(1, max_rounds + 1):
        log = {"round": i, "size": len(cur)}
        # the region is S cap Conv(S_i); earlier removals may fall inside
        C2 = closure(S, cur)
        log["closure_extra"] = len(C2) - len(cur)
        dS = _delta(S, cur)
        log["delta_S"] = dS
        if hi(_delta(S, C2), 20):
            return exit_(C2, "delta-closure", 20, log)
        if hi(dS, 20):
            log["closure_gap"] = True
        R = [x for x in cur if S.colors[x] == j]
        log["R"] = len(R)
        log["red-many"] = lo(Fraction(2 * n, 5) - len(R), 40)
        if len(R) < 3:
            stop = "class-exhausted"
            rounds.append(log)
            break
        hullR = build_hull([by_id[x] for x in R])
        hv = hullR.vertices
        X = tuple(x for x in cur if x in hv or point_in_hull(hullR, by_id[x].coords))
        dX = _delta(S, X)
        log.update(h=len(hv), X=len(X), delta_X=dX)
        if hi(dX, 20):
            return exit_(X, "delta-red-hull", 20, log)
        log["few-outside-hull"] = lo(len(cur) - len(X), 10)
        Xp = tuple(x for x in X if x not in hv)
        dXp = _delta(S, Xp)
        log["delta_X'"] = dXp
        if hi(dXp, 20):
            return exit_(Xp, "delta-next", 20, log)
        log["few-hull-vertices"] = lo(len(hv), 10)
        ring = _ccw_hull(by_id, hv)
        h = len(ring)
        tris = [(ring[0], ring[t], ring[t + 1]) for t in range(1, h - 1)]
        testers = [SimplexTester([table[v] for v in tr]) for tr in tris]
        inside = [[x for x in Xp if t.strictly_inside(table[x])] for t in testers]
        # a fan triangle with high discrepancy yields a convex region
        for t, pts in enumerate(inside):
            if hi(_delta(S, pts), 10):
                before = [x for q in inside[:t] for x in q]
                after = [x for q in inside[t + 1:] for x in q]
                log["fan-triangle"] = {"triangle": t + 2, "sizes": [len(before), len(pts), len(after)],
                              "fifth": Fraction(n, 5)}
                if Fraction(len(pts)) >= Fraction(n, 5):
                    return exit_(pts, "delta-fan-triangle", 10, log)
                side = before if len(before) >= len(after) else after
                if hi(_delta(S, side), 20):
                    return exit_(side, "delta-fan-side", 20, log)
                return exit_(sorted(side + pts), "delta-fan-side+triangle", 20, log)
        reds = [[x for x in pts if S.colors[x] == j] for pts in inside]
        t = max(range(len(tris)), key=lambda a: (len(reds[a]), -a))
        tri, red_in = tris[t], reds[t]
        blue_in = len(inside[t]) - len(red_in)
        log.update(triangle=t + 2, R_tri=len(red_in), B_tri=blue_in)
        log["R_tri_large"] = h > 2 and Fraction(len(red_in)) > Fraction(3 * n, 10 * (h - 2))
        res = order_lemma_simplex([by_id[x] for x in list(tri) + red_in])
        touching = [tuple(sorted(s)) for s in res.complex.top_simplices if s & set(tri)]
        good = [s for s in touching if oracle.is_empty(s)]
        log["touching"] = len(touching)
        log["order_bound"] = res.certificate.to_json()
        log["survivors"] = len(good)
        log["kill_bound_ok"] = len(good) >= len(touching) - blue_in
        log["survivors_ge_cbrt"] = _ge_root(len(good), n, 3)
        share = {v: sum(1 for s in good if v in s) for v in tri}
        p = max(tri, key=lambda v: (share[v], -v))
        log.update(rich_point=p, share=share[p])
        log["third"] = 3 * share[p] >= len(good)
        log["rich"] = _ge_root(share[p], n, 3, 3)
        mine = [s for s in good if p in s]
        derived = [log[key] for key in ("red-many", "few-outside-hull", "few-hull-vertices", "R_tri_large", "rich")]
        log["derived_hold"] = all(bool(v) for v in derived)
        state["derived"] = state["derived"] and log["derived_hold"]
        counted.extend(mine)
        removed.append(p)
        cur = tuple(x for x in cur if x != p)
        log["sound"] = all(p in s for s in mine) and p not in cur
        rounds.append(log)
    shares = sum(r["share"] for r in rounds if "share" in r)
    rep = _report(S, counted, rational_bound("sum of rich-point shares", shares),
                  "peel-2color", {"stop": stop}, color=j)
    details = {"stop": stop, "max_rounds": max_rounds, "removed": removed}
    return DichotomyOutcome(Kind.WITNESSES, rep, None, None, "", label(20), None, state["derived"],
                            tuple(rounds), details)


def project_induct_2color(S: ColoredPointSet, j: int | None = None, threshold_scale=1) -> DichotomyOutcome:
    """Projection induction for two colors down to the planar peeling; a
    level exits when delta >= cbrt(m) for its m points."""
    d, k = S.dim, S.k
    if k != 2 or d < 2:
        raise PreconditionError("bad-regime", f"needs k = 2 and d >= 2 (got d={d}, k={k})")
    j = _smax_color(S) if j is None else j
    ts = Fraction(threshold_scale)
    high = lambda delta, m, dim: _ge_root(delta, m, 3, 1 / ts)
    return _project_induct(S, j, 2, lambda T: peel_dichotomy_2color(T, j, ts), high, "cbrt(n)", False)


def combined_2color(S: ColoredPointSet, j: int | None = None, threshold_scale=1) -> WitnessReport:
    if S.k != 2:
        raise PreconditionError("bad-regime", f"needs k = 2 (got k={S.k})")
    return _combine(S, project_induct_2color(S, j, threshold_scale), "combined-2color")


# ---------------------------------------------------------------- doubling

@dataclass(frozen=True)
class DoublingResult:
    points: tuple
    simplices: tuple
    verified: bool
    epsilon: Fraction
    pair_tests: int
    halvings: int

    def to_json(self) -> dict:
        return {"count": len(self.simplices), "verified": self.verified,
                "epsilon": str(self.epsilon), "pair_tests": self.pair_tests,
                "halvings": self.halvings,
                "points": [[p.id, [str(c) for c in p.coords]] for p in self.points],
                "simplices": [list(s) for s in self.simplices]}


def _parallel(u, v) -> bool:
    return all(u[a] * v[b] == u[b] * v[a] for a in range(3) for b in range(a + 1, 3))


def doubling_directions(X: Sequence[Point]) -> list:
    """Pairwise non-parallel moment-curve directions, none parallel to a
    segment between two points of X."""
    segs = [tuple(a - b for a, b in zip(p.coords, q.coords)) for p, q in itertools.combinations(X, 2)]
    out, t = [], 1
    while len(out) < len(X):
        v = (Fraction(1), Fraction(t), Fraction(t * t))
        if not any(_parallel(v, s) for s in segs):
            out.append(v)
        t += 1
    return out


def doubling_construction(X: Sequence[Point], epsilon=Fraction(1), max_halvings: int = 60) -> DoublingResult:
    """Pair every point with a nearby copy and return the C(n,2) tetrahedra
    spanned by two pairs, checking interior-disjointness for every pair of
    tetrahedra with the exact LP. Epsilon is halved until all checks pass."""
    d = check_points(X)
    if d != 3:
        raise PreconditionError("dimension", "the doubling construction is three dimensional")
    X = sorted(X, key=lambda p: p.id)
    n = len(X)
    dirs = doubling_directions(X)
    base = max(p.id for p in X) + 1
    eps = Fraction(epsilon)
    for halving in range(max_halvings + 1):
        Q = [Point(base + i, tuple(c + eps * v for c, v in zip(p.coords, dirs[i]))) for i, p in enumerate(X)]
        pts = X + Q
        coords = {p.id: p.coords for p in pts}
        sims = [tuple(sorted((X[a].id, Q[a].id, X[b].id, Q[b].id))) for a, b in itertools.combinations(range(n), 2)]
        ok = len(set(coords.values())) == len(pts)
        ok = ok and all(orientation([Point(v, coords[v]) for v in s]) != 0 for s in sims)
        tests = 0
        if ok:
            for s1, s2 in itertools.combinations(sims, 2):
                tests += 1
                if interiors_intersect([coords[v] for v in s1], [coords[v] for v in s2]):
                    ok = False
                    break
        if ok:
            return DoublingResult(tuple(pts), tuple(sims), True, eps, tests, halving)
        eps /= 2
    raise GeometryError("epsilon", f"no working epsilon after {max_halvings} halvings")
