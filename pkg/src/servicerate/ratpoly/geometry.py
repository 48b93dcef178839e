"""Exact polytope operations built on the simplex: redundancy, vertices, containment."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from itertools import combinations
from typing import Mapping, Sequence

from ..errors import InvalidArgumentError, UnboundedPolytopeError, UnsupportedDimensionError
from .core import EQ, LE, Halfspace, Polytope, frac
from .lp import INFEASIBLE, OPTIMAL, UNBOUNDED, lp_max_value, lp_solve

Point = tuple[Fraction, ...]


def is_empty(P: Polytope) -> bool:
    if P.is_trivially_empty():
        return True
    if not P.halfspaces:
        return False
    return lp_solve(None, P.halfspaces, "feasibility", P.dim).status == INFEASIBLE


def _canonical(hs: Sequence[Halfspace]) -> list[Halfspace]:
    """Normalize, drop trivially true rows, merge scalar duplicates."""
    best: dict[tuple, Halfspace] = {}
    eqs: dict[tuple, Halfspace] = {}
    for h in hs:
        h = h.normalized()
        if h.relation == EQ:
            eqs[(h.coeffs, h.bound)] = h
        elif h.is_trivial():
            if h.bound < 0:
                best[h.coeffs] = h
        elif h.coeffs not in best or h.bound < best[h.coeffs].bound:
            best[h.coeffs] = h
    return sorted(list(eqs.values()) + list(best.values()), key=Halfspace.sort_key)


def remove_redundant(P: Polytope) -> Polytope:
    """Drop every inequality implied by the remaining ones (one LP each)."""
    hs = _canonical(P.halfspaces)
    cand = Polytope(P.dim, tuple(hs))
    if is_empty(cand):
        return Polytope.empty(P.dim)
    kept = list(hs)
    for h in hs:
        if h.relation != LE:
            continue
        others = [g for g in kept if g is not h]
        if not others:
            continue
        res = lp_max_value(h.coeffs, others, P.dim)
        if res.status == OPTIMAL and res.value <= h.bound:
            kept.remove(h)
    return Polytope(P.dim, tuple(kept))


def _solve_square(rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> Point | None:
    """Unique solution of a square rational system, or None if singular."""
    n = len(rows)
    a = [list(map(Fraction, r)) + [Fraction(b)] for r, b in zip(rows, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            return None
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [v / p for v in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return tuple(a[r][n] for r in range(n))


def check_bounded(P: Polytope) -> None:
    for j in range(P.dim):
        for sign in (1, -1):
            obj = [0] * P.dim
            obj[j] = sign
            if lp_solve(obj, P.halfspaces, "max", P.dim).status == UNBOUNDED:
                raise UnboundedPolytopeError(f"polytope is unbounded along {'+' if sign > 0 else '-'}x{j + 1}")


def _half(v) -> int:
    return 0 if v[1] > 0 or (v[1] == 0 and v[0] > 0) else 1


def _angle_cmp(u, v) -> int:
    hu, hv = _half(u), _half(v)
    if hu != hv:
        return hu - hv
    cross = u[0] * v[1] - u[1] * v[0]
    return -1 if cross > 0 else (1 if cross < 0 else 0)


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def ccw_order(points: Sequence[Point]) -> list[Point]:
    """Extreme points of a planar set, counter-clockwise from the lexicographic minimum.

    Andrew's monotone chain; collinear boundary points are dropped.
    """
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts
    lower: list[Point] = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[Point] = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _vertices_by_subsets(P: Polytope) -> list[Point]:
    rows = [h for h in P.halfspaces if not h.is_trivial()]
    out = set()
    for combo in combinations(rows, P.dim):
        x = _solve_square([h.coeffs for h in combo], [h.bound for h in combo])
        if x is not None and P.contains_point(x):
            out.add(x)
    return sorted(out)


def _vertices_2d(P: Polytope) -> list[Point]:
    rows = [h for h in P.halfspaces if not h.is_trivial()]
    if any(h.relation == EQ for h in rows) or len(rows) < 3:
        return ccw_order(_vertices_by_subsets(P))
    rows = sorted(rows, key=cmp_to_key(lambda g, h: _angle_cmp(g.coeffs, h.coeffs)))
    pts = []
    for g, h in zip(rows, rows[1:] + rows[:1]):
        x = _solve_square([g.coeffs, h.coeffs], [g.bound, h.bound])
        if x is None or not P.contains_point(x):
            # lower-dimensional polygon: adjacent facets need not meet
            return ccw_order(_vertices_by_subsets(P))
        pts.append(x)
    return ccw_order(pts)


def vertices(P: Polytope) -> list[Point]:
    """Exact vertex list of a bounded polytope of dimension <= 3.

    2-D results are in counter-clockwise order; other dimensions are sorted.
    """
    if P.dim > 3:
        raise UnsupportedDimensionError(f"vertex enumeration supports dim <= 3, got {P.dim}")
    if is_empty(P):
        return []
    if P.dim == 0:
        return [()]
    check_bounded(P)
    P = remove_redundant(P)
    if P.dim == 1:
        lo = lp_solve([1], P.halfspaces, "min", 1).value
        hi = lp_solve([1], P.halfspaces, "max", 1).value
        return sorted({(lo,), (hi,)})
    if P.dim == 2:
        return _vertices_2d(P)
    return _vertices_by_subsets(P)


def with_vertices(P: Polytope) -> Polytope:
    return Polytope(P.dim, P.halfspaces, tuple(vertices(P)))


@dataclass(frozen=True)
class Containment:
    contained: bool
    witness: Point | None = None

    def __bool__(self):
        return self.contained


def contains(A: Polytope, B: Polytope) -> Containment:
    """Decide ``B <= A`` by maximizing each facet of A over B.

    On failure the witness is a point of B outside A.
    """
    if A.dim != B.dim:
        raise InvalidArgumentError(f"dimension mismatch: {A.dim} vs {B.dim}")
    if is_empty(B):
        return Containment(True)
    for h in A.halfspaces:
        directions = [(h.coeffs, h.bound)]
        if h.relation == EQ:
            directions.append((tuple(-c for c in h.coeffs), -h.bound))
        for coeffs, bound in directions:
            if not any(coeffs):
                if bound < 0:
                    return Containment(False, lp_solve(None, B.halfspaces, "feasibility", B.dim).x)
                continue
            res = lp_max_value(coeffs, B.halfspaces, B.dim)
            if res.status == OPTIMAL and res.value <= bound:
                continue
            # witness: a point of B strictly beyond this facet
            if res.status == OPTIMAL:
                w = lp_solve(coeffs, B.halfspaces, "max", B.dim).x
            else:
                beyond = Halfspace.ge(coeffs, bound + 1)
                w = lp_solve(None, B.halfspaces + (beyond,), "feasibility", B.dim).x
            return Containment(False, w)
    return Containment(True)


def same_set(A: Polytope, B: Polytope) -> tuple[Containment, Containment]:
    """(B <= A, A <= B)."""
    return contains(A, B), contains(B, A)


def cross_section(P: Polytope, fixed: Mapping[int, object]) -> Polytope:
    """Fix some coordinates, drop them, and remove redundancy.

    An empty section is returned as an empty polytope, not raised.
    """
    fixed = {j: frac(v) for j, v in fixed.items()}
    for j in fixed:
        if not 0 <= j < P.dim:
            raise InvalidArgumentError(f"coordinate {j} out of range for dimension {P.dim}")
    free = [j for j in range(P.dim) if j not in fixed]
    hs = []
    for h in P.halfspaces:
        b = h.bound - sum((h.coeffs[j] * v for j, v in fixed.items()), Fraction(0))
        hs.append(Halfspace(tuple(h.coeffs[j] for j in free), b, h.relation))
    return remove_redundant(Polytope(len(free), tuple(hs)))


def hull_2d(points: Sequence[Sequence]) -> Polytope:
    """H-representation of the convex hull of points in the plane."""
    pts = ccw_order([tuple(frac(c) for c in p) for p in points])
    if not pts:
        return Polytope.empty(2)
    if len(pts) == 1:
        (x, y), = pts
        return Polytope(2, (Halfspace((1, 0), x, EQ), Halfspace((0, 1), y, EQ)))
    hs = []
    if len(pts) == 2:
        (ax, ay), (bx, by) = pts
        dx, dy = bx - ax, by - ay
        hs.append(Halfspace((dy, -dx), dy * ax - dx * ay, EQ))
        hs.append(Halfspace((dx, dy), dx * bx + dy * by))
        hs.append(Halfspace.ge((dx, dy), dx * ax + dy * ay))
        return Polytope(2, tuple(hs))
    for p, q in zip(pts, pts[1:] + pts[:1]):
        dx, dy = q[0] - p[0], q[1] - p[1]
        hs.append(Halfspace((dy, -dx), dy * p[0] - dx * p[1]))
    return remove_redundant(Polytope(2, tuple(hs)))
