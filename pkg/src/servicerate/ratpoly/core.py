from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from ..errors import InvalidArgumentError

LE = "<="
EQ = "="


def frac(x) -> Fraction:
    """Coerce ints, Fractions and ``"num/den"`` strings to Fraction (floats refused)."""
    if isinstance(x, float):
        raise InvalidArgumentError(f"refusing inexact float {x!r}; pass a Fraction or a 'num/den' string")
    return Fraction(x)


def frac_str(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def primitive(coeffs: Sequence[Fraction], bound: Fraction) -> tuple[tuple[int, ...], int]:
    """Positive rescaling of ``coeffs . x <= bound`` to coprime integers."""
    vals = [Fraction(c) for c in coeffs] + [Fraction(bound)]
    den = lcm(*(v.denominator for v in vals))
    ints = [v.numerator * (den // v.denominator) for v in vals]
    g = gcd(*ints)
    if g > 1:
        ints = [v // g for v in ints]
    return tuple(ints[:-1]), ints[-1]


@dataclass(frozen=True)
class Halfspace:
    """``coeffs . x <= bound`` (or ``=`` when relation is EQ)."""

    coeffs: tuple[Fraction, ...]
    bound: Fraction
    relation: str = LE

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(frac(c) for c in self.coeffs))
        object.__setattr__(self, "bound", frac(self.bound))
        if self.relation not in (LE, EQ):
            raise InvalidArgumentError(f"unknown relation {self.relation!r}")

    @classmethod
    def ge(cls, coeffs, bound) -> Halfspace:
        """``coeffs . x >= bound`` stored as its negation."""
        return cls(tuple(-frac(c) for c in coeffs), -frac(bound))

    @property
    def dim(self) -> int:
        return len(self.coeffs)

    def lhs(self, x: Sequence[Fraction]) -> Fraction:
        return sum((c * v for c, v in zip(self.coeffs, x) if c), Fraction(0))

    def holds(self, x: Sequence[Fraction]) -> bool:
        v = self.lhs(x)
        return v == self.bound if self.relation == EQ else v <= self.bound

    def is_trivial(self) -> bool:
        return not any(self.coeffs)

    def normalized(self) -> Halfspace:
        """Scaled to coprime integers; equalities also get a positive leading coefficient."""
        ints, b = primitive(self.coeffs, self.bound)
        if self.relation == EQ:
            lead = next((c for c in ints if c), 0)
            if lead < 0:
                ints, b = tuple(-c for c in ints), -b
        return Halfspace(ints, b, self.relation)

    def sort_key(self):
        return (self.relation, tuple(-c for c in self.coeffs), self.bound)

    def __str__(self):
        terms = []
        for j, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{'+' if c > 0 else '-'} {frac_str(abs(c))}*x{j + 1}")
        lhs = " ".join(terms).lstrip("+ ") or "0"
        return f"{lhs} {self.relation} {frac_str(self.bound)}"


@dataclass(frozen=True)
class Polytope:
    """H-representation in R^dim; ``vertices`` is an optional cached V-rep."""

    dim: int
    halfspaces: tuple[Halfspace, ...]
    vertices: tuple[tuple[Fraction, ...], ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        hs = tuple(self.halfspaces)
        for h in hs:
            if h.dim != self.dim:
                raise InvalidArgumentError(f"halfspace of dimension {h.dim} in a polytope of dimension {self.dim}")
        object.__setattr__(self, "halfspaces", hs)
        if self.vertices is not None:
            vs = tuple(tuple(frac(c) for c in v) for v in self.vertices)
            for v in vs:
                if not self.contains_point(v):
                    raise InvalidArgumentError(f"cached vertex {v} violates the H-representation")
            object.__setattr__(self, "vertices", vs)

    @classmethod
    def from_rows(cls, dim: int, rows: Iterable[tuple[Sequence, object]]) -> Polytope:
        return cls(dim, tuple(Halfspace(tuple(c), b) for c, b in rows))

    @classmethod
    def empty(cls, dim: int) -> Polytope:
        return cls(dim, (Halfspace((0,) * dim, -1),))

    def contains_point(self, x: Sequence) -> bool:
        if len(x) != self.dim:
            raise InvalidArgumentError(f"point of length {len(x)} for dimension {self.dim}")
        x = [frac(v) for v in x]
        return all(h.holds(x) for h in self.halfspaces)

    def with_halfspaces(self, extra: Iterable[Halfspace]) -> Polytope:
        return Polytope(self.dim, self.halfspaces + tuple(extra))

    def is_trivially_empty(self) -> bool:
        return any(h.is_trivial() and not h.holds((0,) * self.dim) for h in self.halfspaces)


def nonneg_orthant(dim: int) -> tuple[Halfspace, ...]:
    return tuple(Halfspace.ge(tuple(int(t == j) for t in range(dim)), 0) for j in range(dim))
