"""Incremental vertex maintenance for a bounded polytope under added cuts.

Each vertex keeps the full set of constraints tight at it.  When a cut is
added, surviving vertices stay, violated ones go, and every edge between a
strictly-inside and a violated vertex contributes its crossing point.  Two
vertices are adjacent iff the constraints tight at both have rank dim - 1.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from typing import Sequence

from ..errors import InvalidArgumentError
from .core import LE, Halfspace, Polytope

Point = tuple[Fraction, ...]


def _rank(rows: list[list[Fraction]]) -> int:
    a = [list(r) for r in rows]
    rk = 0
    ncols = len(a[0]) if a else 0
    for col in range(ncols):
        piv = next((r for r in range(rk, len(a)) if a[r][col]), None)
        if piv is None:
            continue
        a[rk], a[piv] = a[piv], a[rk]
        p = a[rk][col]
        for r in range(rk + 1, len(a)):
            if a[r][col]:
                f = a[r][col] / p
                a[r] = [x - f * y for x, y in zip(a[r], a[rk])]
        rk += 1
    return rk


class DoubleDescription:
    """H- and V-representation of a bounded polytope, kept in sync under cuts."""

    def __init__(self, dim: int, halfspaces: Sequence[Halfspace], verts: Sequence[Sequence]):
        self.dim = dim
        self.halfspaces: list[Halfspace] = []
        for h in halfspaces:
            if h.relation != LE:
                raise InvalidArgumentError("double description supports inequalities only")
            self.halfspaces.append(h)
        self.verts: dict[Point, frozenset[int]] = {}
        for v in verts:
            v = tuple(Fraction(c) for c in v)
            self.verts[v] = self._tight(v)

    @classmethod
    def box(cls, upper: Sequence[Fraction]) -> DoubleDescription:
        """The box ``0 <= x_i <= upper[i]``."""
        dim = len(upper)
        hs = []
        for j in range(dim):
            e = tuple(int(t == j) for t in range(dim))
            hs.append(Halfspace.ge(e, 0))
            hs.append(Halfspace(e, upper[j]))
        corners = set(product(*[(Fraction(0), Fraction(u)) for u in upper]))
        return cls(dim, hs, sorted(corners))

    def _tight(self, v: Point) -> frozenset[int]:
        return frozenset(t for t, h in enumerate(self.halfspaces) if h.lhs(v) == h.bound)

    def _adjacent(self, a: frozenset[int], b: frozenset[int]) -> bool:
        common = a & b
        if len(common) < self.dim - 1:
            return False
        return _rank([list(self.halfspaces[t].coeffs) for t in common]) == self.dim - 1

    @property
    def vertices(self) -> list[Point]:
        return sorted(self.verts)

    def add(self, h: Halfspace) -> bool:
        """Intersect with ``h``; returns False if no vertex was cut off."""
        slack = {v: h.lhs(v) - h.bound for v in self.verts}
        out = [v for v, s in slack.items() if s > 0]
        self.halfspaces.append(h)
        idx = len(self.halfspaces) - 1
        if not out:
            for v, s in slack.items():
                if s == 0:
                    self.verts[v] = self.verts[v] | {idx}
            return False
        inside = [v for v, s in slack.items() if s < 0]
        fresh: dict[Point, None] = {}
        for v in inside:
            for w in out:
                if self._adjacent(self.verts[v], self.verts[w]):
                    t = slack[v] / (slack[v] - slack[w])
                    fresh[tuple(a + t * (b - a) for a, b in zip(v, w))] = None
        kept = {v: T | {idx} if slack[v] == 0 else T for v, T in self.verts.items() if slack[v] <= 0}
        for p in fresh:
            kept[p] = frozenset()
        self.verts = kept
        for p in fresh:
            self.verts[p] = self._tight(p)
        return True

    def polytope(self) -> Polytope:
        return Polytope(self.dim, tuple(self.halfspaces))
