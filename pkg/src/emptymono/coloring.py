"""Colored point sets and their discrepancy."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import GeometryError, PreconditionError
from .geometry import Point, check_points


@dataclass(frozen=True)
class ColoredPointSet:
    points: tuple
    colors: dict = field(compare=False)
    k: int = 0

    @staticmethod
    def make(points: Sequence[Point], colors, k=None, strict=True) -> "ColoredPointSet":
        pts = tuple(sorted(points, key=lambda p: p.id))
        check_points(pts)
        cmap = dict(colors) if isinstance(colors, dict) else {p.id: c for p, c in zip(pts, colors)}
        if set(cmap) != {p.id for p in pts}:
            raise PreconditionError("bad-coloring", "every point needs exactly one color")
        if k is None:
            k = len(set(cmap.values()))
        if any(not (0 <= c < k) for c in cmap.values()):
            raise PreconditionError("bad-coloring", f"colors must lie in 0..{k - 1}")
        if strict and len(set(cmap.values())) != k:
            raise PreconditionError("bad-coloring", "some color class is empty")
        return ColoredPointSet(pts, cmap, k)

    @property
    def dim(self) -> int:
        return self.points[0].dim

    @property
    def n(self) -> int:
        return len(self.points)

    def ids(self):
        return [p.id for p in self.points]

    def by_id(self) -> dict:
        return {p.id: p for p in self.points}

    def class_of(self, color) -> list:
        return [p for p in self.points if self.colors[p.id] == color]

    def class_sizes(self) -> dict:
        out = {c: 0 for c in range(self.k)}
        for c in self.colors.values():
            out[c] += 1
        return out

    def restrict(self, ids) -> "ColoredPointSet":
        ids = set(ids)
        pts = [p for p in self.points if p.id in ids]
        return ColoredPointSet(tuple(pts), {p.id: self.colors[p.id] for p in pts}, self.k)


@dataclass(frozen=True)
class DiscrepancyStats:
    class_sizes: dict
    smax: int       # color of a largest class (smallest color on ties)
    smin: int
    delta: int

    @property
    def max_size(self) -> int:
        return self.class_sizes[self.smax]

    @property
    def min_size(self) -> int:
        return self.class_sizes[self.smin]


def discrepancy(S: ColoredPointSet) -> DiscrepancyStats:
    sizes = S.class_sizes()
    smax = min(sizes, key=lambda c: (-sizes[c], c))
    smin = min(sizes, key=lambda c: (sizes[c], c))
    delta = S.k * sizes[smax] - S.n
    return DiscrepancyStats(sizes, smax, smin, delta)


def min_class_forces_discrepancy(n: int, k: int, smin: int, f) -> bool:
    """If the smallest class has at most n/k - (k-1) f points then the
    discrepancy is at least k f. Returns the conclusion's guarantee for the
    given sizes: True when the hypothesis holds (so delta >= k f follows)."""
    return Fraction(smin) <= Fraction(n, k) - (k - 1) * Fraction(f)


def min_class_lower_bound(n: int, k: int, delta, f) -> bool:
    """Contrapositive form: delta < k f implies |S_min| > n/k - (k-1) f."""
    return Fraction(delta) < k * Fraction(f)


def two_color_sizes(n: int, delta: int):
    """For two colors: |S_max| = (n + delta)/2 and |S_min| = (n - delta)/2."""
    return Fraction(n + delta, 2), Fraction(n - delta, 2)
