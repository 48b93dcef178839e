"""Dense linear algebra over GF(q) and the validated generator matrix type."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import InvalidArgumentError, InvariantViolation
from .gfield import FieldSpec

Grid = Sequence[Sequence[int]]


def rref(rows: Grid, f: FieldSpec) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form with first-nonzero pivoting.

    Returns the nonzero reduced rows and their pivot columns.
    """
    a = [list(r) for r in rows]
    if not a:
        return [], []
    ncols = len(a[0])
    pivots: list[int] = []
    top = 0
    for col in range(ncols):
        if top == len(a):
            break
        hit = next((r for r in range(top, len(a)) if a[r][col]), None)
        if hit is None:
            continue
        a[top], a[hit] = a[hit], a[top]
        s = f.inv(a[top][col])
        a[top] = [f.mul(s, x) for x in a[top]]
        for r in range(len(a)):
            if r != top and a[r][col]:
                c = f.neg(a[r][col])
                a[r] = [f.add(x, f.mul(c, y)) for x, y in zip(a[r], a[top])]
        pivots.append(col)
        top += 1
    return a[:top], pivots


def rank(rows: Grid, f: FieldSpec) -> int:
    return len(rref(rows, f)[1])


def transpose(rows: Grid) -> list[list[int]]:
    return [list(c) for c in zip(*rows)]


def in_span(target: Sequence[int], cols: Sequence[Sequence[int]], f: FieldSpec) -> bool:
    """True iff ``target`` is a GF(q)-combination of the column vectors ``cols``."""
    for c in cols:
        if len(c) != len(target):
            raise InvalidArgumentError(
                f"column of length {len(c)} does not match target of length {len(target)}"
            )
    if not any(target):
        return True
    if not cols:
        return False
    # rank(cols) == rank(cols + target), computed on the transposed system
    return rank(list(cols), f) == rank(list(cols) + [list(target)], f)


def null_space(rows: Grid, f: FieldSpec) -> list[list[int]]:
    """Basis of ``{y : rows . y^T = 0}``."""
    ncols = len(rows[0])
    red, pivots = rref(rows, f)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        y = [0] * ncols
        y[fc] = 1
        for r, pc in zip(red, pivots):
            y[pc] = f.neg(r[fc])
        basis.append(y)
    return basis


@dataclass(frozen=True)
class GenMatrix:
    """A k x n generator matrix of rank k with no zero column and n > k >= 2."""

    field: FieldSpec
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        if not rows or not rows[0]:
            raise InvariantViolation("empty matrix")
        n = len(rows[0])
        for i, r in enumerate(rows, 1):
            if len(r) != n:
                raise InvariantViolation(f"row {i} has {len(r)} entries, expected {n}")
            for x in r:
                if not 0 <= x < self.field.q:
                    raise InvariantViolation(f"entry {x} in row {i} is outside [0, {self.field.q})")
        k = len(rows)
        if not n > k >= 2:
            raise InvariantViolation(f"need n > k >= 2, got k={k}, n={n}")
        for j in range(n):
            if not any(r[j] for r in rows):
                raise InvariantViolation(f"all-zero column at index {j + 1}")
        rk = rank(rows, self.field)
        if rk < k:
            raise InvariantViolation(f"rank {rk} < k={k}")

    @property
    def k(self) -> int:
        return len(self.rows)

    @property
    def n(self) -> int:
        return len(self.rows[0])

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self.rows)

    @property
    def columns(self) -> list[tuple[int, ...]]:
        return [self.column(j) for j in range(self.n)]

    def array(self) -> np.ndarray:
        return np.array(self.rows, dtype=np.int64)

    def unit(self, i: int) -> tuple[int, ...]:
        """The standard basis vector e_i of GF(q)^k (0-based i)."""
        if not 0 <= i < self.k:
            raise InvalidArgumentError(f"object index {i} out of range for k={self.k}")
        return tuple(int(t == i) for t in range(self.k))


def is_systematic(G: GenMatrix) -> bool:
    return all(G.rows[r][c] == int(r == c) for r in range(G.k) for c in range(G.k))
