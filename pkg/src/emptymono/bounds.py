"""Counting constants and size certificates.

A bound is ``rational + coef * term`` where the optional term is either
``log2(m)`` or ``m ** (1 / 2**e)``. Comparisons against achieved integer
counts are exact: both irrational shapes reduce to integer power tests.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction


def c_const(d: int) -> int:
    """Additive constant of the convex-position triangulation bound."""
    return d ** 3 + d ** 2 + d


def degree_schedule(d: int, i: int) -> int:
    """Guaranteed 1-skeleton degree when removing down from i points with the
    refined schedule (2d while i > d(d+1), then 2d - j on the j-th band)."""
    top = d * (d + 1)
    if i > top:
        return 2 * d
    j = 1
    while not (Fraction(top, j + 1) < i <= Fraction(top, j)):
        j += 1
    return 2 * d - j


def improved_c_const(d: int) -> int:
    """Constant achieved by the refined removal schedule.

    Reinserting the point removed at size i adds at least
    ``degree_schedule(d, i) - (d - 1)`` simplices, starting from a single
    simplex on d+1 points.
    """
    top = d * (d + 1)
    g = 1 + sum(degree_schedule(d, i) - (d - 1) for i in range(d + 2, top + 1))
    return (d + 1) * top - g


def improved_c_closed(d: int) -> Fraction:
    return Fraction(d ** 3, 2) + Fraction(13 * d * d, 12) + Fraction(7 * d, 12)


def log2_floor(m: int) -> int:
    return m.bit_length() - 1


def int_root_ceil(m: int, e: int) -> int:
    """Smallest integer c with c ** (2**e) >= m."""
    if m <= 1:
        return max(m, 0)
    k = 2 ** e
    c = int(round(m ** (1.0 / k)))
    while c ** k < m:
        c += 1
    while c > 0 and (c - 1) ** k >= m:
        c -= 1
    return c


@dataclass(frozen=True)
class Bound:
    formula: str
    rational: Fraction
    kind: str = ""          # "", "log2" or "root"
    coef: Fraction = Fraction(0)
    arg: int = 1
    e: int = 0

    def approx(self) -> float:
        v = float(self.rational)
        if self.kind == "log2" and self.arg > 0:
            v += float(self.coef) * math.log2(self.arg)
        elif self.kind == "root":
            v += float(self.coef) * self.arg ** (1.0 / 2 ** self.e)
        return v

    def is_rational(self) -> bool:
        return self.kind == "" or self.coef == 0

    def satisfied_by(self, achieved) -> bool:
        x = Fraction(achieved) - self.rational
        if self.is_rational():
            return x >= 0
        if self.coef < 0:
            raise ValueError("only nonnegative irrational terms are supported")
        y = x / self.coef
        if self.kind == "log2":
            # y >= log2(arg)  <=>  2**y >= arg
            if self.arg <= 1:
                return y >= 0
            if y < 0:
                return False
            return 2 ** y.numerator >= self.arg ** y.denominator
        # y >= arg ** (1/2**e)
        if y < 0:
            return False
        return y.numerator ** (2 ** self.e) >= self.arg * y.denominator ** (2 ** self.e)

    def __add__(self, other: "Bound") -> "Bound":
        if not other.is_rational() and not self.is_rational():
            raise ValueError("cannot add two irrational terms")
        irr = other if self.is_rational() else self
        return Bound(f"{self.formula} + {other.formula}", self.rational + other.rational,
                     irr.kind, irr.coef, irr.arg, irr.e)


def rational_bound(formula: str, value) -> Bound:
    return Bound(formula, Fraction(value))


@dataclass(frozen=True)
class SizeCertificate:
    achieved: int
    bound: Bound
    holds: bool
    slack: float
    details: dict = field(default_factory=dict, compare=False)

    @property
    def formula(self) -> str:
        return self.bound.formula

    def to_json(self) -> dict:
        out = {"achieved": self.achieved, "formula": self.bound.formula,
               "bound": _num(self.bound), "holds": self.holds,
               "slack": _slack(self)}
        if self.details:
            out["details"] = _jsonable(self.details)
        return out


def _num(b: Bound):
    if b.is_rational():
        r = b.rational
        return int(r) if r.denominator == 1 else str(r)
    return round(b.approx(), 9)


def _slack(c: SizeCertificate):
    if c.bound.is_rational():
        s = Fraction(c.achieved) - c.bound.rational
        return int(s) if s.denominator == 1 else str(s)
    return round(c.slack, 9)


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (set, frozenset)):
        return sorted(_jsonable(v) for v in x)
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else str(x)
    if isinstance(x, SizeCertificate):
        return x.to_json()
    if isinstance(x, float):
        return round(x, 9)
    return x


def certify(achieved: int, bound: Bound, **details) -> SizeCertificate:
    return SizeCertificate(int(achieved), bound, bound.satisfied_by(achieved),
                           achieved - bound.approx(), details)
