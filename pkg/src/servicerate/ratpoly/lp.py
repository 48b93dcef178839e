"""Two-phase primal simplex over the rationals with Bland's rule.

No tolerances anywhere: every pivot is exact rational arithmetic, so
OPTIMAL / INFEASIBLE / UNBOUNDED verdicts are certificates, not estimates.
The tableau runs on GMP rationals (``gmpy2.mpq``) for speed; inputs and
results are plain ``Fraction``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from gmpy2 import mpq

from ..errors import InvalidArgumentError
from .core import EQ, Halfspace, frac

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

_ZERO = Fraction(0)
_QZERO = mpq(0)


def _q(v) -> mpq:
    if type(v) is int:
        return mpq(v) if v else _QZERO
    if type(v) is Fraction:
        return mpq(v.numerator, v.denominator)
    v = frac(v)
    return mpq(v.numerator, v.denominator)


def _f(v: mpq) -> Fraction:
    return Fraction(int(v.numerator), int(v.denominator))


@dataclass(frozen=True)
class LPResult:
    status: str
    x: tuple[Fraction, ...] | None = None
    value: Fraction | None = None

    @property
    def ok(self) -> bool:
        return self.status == OPTIMAL


def _pivot(T: list[list[mpq]], d: list[mpq], basis: list[int], r: int, j: int) -> None:
    row = T[r]
    p = row[j]
    if p != 1:
        row = [v / p if v else v for v in row]
        T[r] = row
    nz = [t for t, v in enumerate(row) if v]
    for s, other in enumerate(T):
        if s != r:
            f = other[j]
            if f:
                for t in nz:
                    other[t] -= f * row[t]
    f = d[j]
    if f:
        for t in nz:
            d[t] -= f * row[t]
    basis[r] = j


def _run(T, d, basis, ncols: int) -> str:
    """Iterate until optimal or unbounded; entering columns limited to < ncols."""
    while True:
        j = next((t for t in range(ncols) if d[t] > 0), None)
        if j is None:
            return OPTIMAL
        best = None
        for r, row in enumerate(T):
            a = row[j]
            if a > 0:
                key = (row[-1] / a, basis[r])
                if best is None or key < best[0]:
                    best = (key, r)
        if best is None:
            return UNBOUNDED
        _pivot(T, d, basis, best[1], j)


def solve_standard(c: Sequence, A: Sequence[Sequence], b: Sequence) -> LPResult:
    """Maximize ``c.x`` subject to ``A x = b`` and ``x >= 0``."""
    n = len(c)
    T: list[list[mpq]] = []
    for row, rhs in zip(A, b):
        if len(row) != n:
            raise InvalidArgumentError("constraint row length does not match objective")
        row = [_q(v) for v in row] + [_q(rhs)]
        if row[-1] < 0:
            row = [-v for v in row]
        T.append(row)
    m = len(T)

    # reuse existing unit columns as the starting basis where possible
    basis = [-1] * m
    for j in range(n):
        hits = [r for r in range(m) if T[r][j]]
        if len(hits) == 1 and T[hits[0]][j] == 1 and basis[hits[0]] < 0:
            basis[hits[0]] = j
    art_rows = [r for r in range(m) if basis[r] < 0]
    width = n + len(art_rows)
    for r in range(m):
        T[r] = T[r][:n] + [_QZERO] * len(art_rows) + [T[r][n]]
    for a, r in enumerate(art_rows):
        T[r][n + a] = mpq(1)
        basis[r] = n + a

    if art_rows:
        # phase 1: maximize -(sum of artificials)
        d = [_QZERO] * (width + 1)
        for r in art_rows:
            for t in range(n):
                d[t] += T[r][t]
            d[-1] += T[r][-1]
        _run(T, d, basis, n)
        if d[-1] != 0:
            return LPResult(INFEASIBLE)
        keep = []
        for r in range(m):
            if basis[r] >= n:
                j = next((t for t in range(n) if T[r][t]), None)
                if j is None:
                    continue  # redundant equality
                _pivot(T, d, basis, r, j)
            keep.append(r)
        T = [T[r] for r in keep]
        basis = [basis[r] for r in keep]

    cf = [_q(v) for v in c]
    d = cf + [_QZERO] * (width - n) + [_QZERO]
    for r, bj in enumerate(basis):
        cb = cf[bj] if bj < n else _QZERO
        if cb:
            for t, v in enumerate(T[r]):
                if v:
                    d[t] -= cb * v
    status = _run(T, d, basis, n)
    if status == UNBOUNDED:
        return LPResult(UNBOUNDED)
    x = [_ZERO] * n
    for r, bj in enumerate(basis):
        if bj < n:
            x[bj] = _f(T[r][-1])
    return LPResult(OPTIMAL, tuple(x), _f(-d[-1]))


def lp_solve(objective: Sequence | None, constraints: Sequence[Halfspace], sense: str = "max",
             dim: int | None = None) -> LPResult:
    """Optimize over ``{x : every constraint holds}`` with free variables.

    ``sense`` is ``"max"``, ``"min"`` or ``"feasibility"`` (objective ignored).
    Variables carrying an explicit ``-x_j <= 0`` row are kept nonnegative
    directly instead of being split.
    """
    if dim is None:
        dim = len(objective) if objective is not None else constraints[0].dim
    for h in constraints:
        if h.dim != dim:
            raise InvalidArgumentError(f"constraint of dimension {h.dim}, expected {dim}")
    if sense == "feasibility" or objective is None:
        obj = [_ZERO] * dim
    else:
        if len(objective) != dim:
            raise InvalidArgumentError(f"objective of length {len(objective)}, expected {dim}")
        obj = [frac(v) for v in objective]
        if sense == "min":
            obj = [-v for v in obj]
        elif sense != "max":
            raise InvalidArgumentError(f"unknown sense {sense!r}")

    nonneg = set()
    rows = []
    for h in constraints:
        nz = [j for j, c in enumerate(h.coeffs) if c]
        if h.relation != EQ and len(nz) == 1 and h.coeffs[nz[0]] < 0 and h.bound == 0:
            nonneg.add(nz[0])
        else:
            rows.append(h)

    # column layout: one column per nonneg var, two per free var, one slack per <= row
    col_of: list[tuple[int, int | None]] = []
    ncol = 0
    for j in range(dim):
        if j in nonneg:
            col_of.append((ncol, None))
            ncol += 1
        else:
            col_of.append((ncol, ncol + 1))
            ncol += 2
    nslack = sum(h.relation != EQ for h in rows)
    total = ncol + nslack

    c = [_ZERO] * total
    for j, (pcol, ncol_j) in enumerate(col_of):
        c[pcol] = obj[j]
        if ncol_j is not None:
            c[ncol_j] = -obj[j]
    A, b = [], []
    s = ncol
    for h in rows:
        row = [_ZERO] * total
        for j, v in enumerate(h.coeffs):
            if v:
                pcol, ncol_j = col_of[j]
                row[pcol] = v
                if ncol_j is not None:
                    row[ncol_j] = -v
        if h.relation != EQ:
            row[s] = Fraction(1)
            s += 1
        A.append(row)
        b.append(h.bound)

    res = solve_standard(c, A, b)
    if res.status != OPTIMAL:
        return res
    x = tuple(res.x[p] - (res.x[q] if q is not None else 0) for p, q in col_of)
    value = sum((o * v for o, v in zip(obj, x)), _ZERO)
    if sense == "min":
        value = -value
    elif sense == "feasibility":
        value = _ZERO
    return LPResult(OPTIMAL, x, value)


def lp_max_value(objective: Sequence, constraints: Sequence[Halfspace], dim: int | None = None) -> LPResult:
    """Optimal value of ``max objective.x`` over free x, solved through the dual.

    The dual ``min b.y : A^T y = c, y >= 0`` has only ``dim`` rows, which is
    much cheaper than the primal when there are many constraints in a low
    dimension.  No maximizer is returned (``x`` is None).  UNBOUNDED means the
    dual is infeasible, which is primal unboundedness only when the primal is
    feasible; callers must know that independently.
    """
    if dim is None:
        dim = len(objective)
    cols, costs = [], []
    for h in constraints:
        if h.dim != dim:
            raise InvalidArgumentError(f"constraint of dimension {h.dim}, expected {dim}")
        cols.append(h.coeffs)
        costs.append(-h.bound)
        if h.relation == EQ:
            cols.append(tuple(-v for v in h.coeffs))
            costs.append(h.bound)
    A = [[col[j] for col in cols] for j in range(dim)]
    res = solve_standard(costs, A, [frac(v) for v in objective])
    if res.status == INFEASIBLE:
        return LPResult(UNBOUNDED)
    if res.status == UNBOUNDED:
        return LPResult(INFEASIBLE)
    return LPResult(OPTIMAL, None, -res.value)
