"""Fourier-Motzkin projection on integer rows.

Rows are kept as primitive integer vectors.  Each inequality carries the set
of original inequalities it was combined from; after t eliminations a row
built from more than t + 1 originals is redundant (Chernikov's rule) and is
dropped.  Scalar-duplicate rows are merged every step.  Full LP redundancy
removal is left to the caller.
"""

from __future__ import annotations

import logging
from math import gcd
from typing import Iterable, Sequence

from ..errors import InvalidArgumentError, ResourceLimitError
from .core import EQ, Halfspace, primitive

log = logging.getLogger(__name__)

DEFAULT_ROW_CAP = 200_000


def _normalize(coeffs: list[int], bound: int) -> tuple[tuple[int, ...], int]:
    g = gcd(*coeffs, bound)
    if g > 1:
        return tuple(c // g for c in coeffs), bound // g
    return tuple(coeffs), bound


def fm_eliminate(system: Sequence[Halfspace], drop: Iterable[int],
                 row_cap: int = DEFAULT_ROW_CAP) -> list[Halfspace]:
    """Project ``system`` onto the variables not in ``drop``.

    The result is expressed over the surviving variables in their original
    order.  An infeasible system comes back as the single row ``0 <= -1``.
    """
    if not system:
        raise InvalidArgumentError("empty system")
    dim = system[0].dim
    drop = set(drop)
    if not drop <= set(range(dim)):
        raise InvalidArgumentError(f"variables {sorted(drop)} not all in range({dim})")
    keep = [j for j in range(dim) if j not in drop]

    ineqs: list[tuple[tuple[int, ...], int, int]] = []  # (coeffs, bound, history mask)
    eqs: list[tuple[tuple[int, ...], int]] = []
    for h in system:
        if h.dim != dim:
            raise InvalidArgumentError("halfspaces of mixed dimension")
        c, b = primitive(h.coeffs, h.bound)
        if h.relation == EQ:
            eqs.append((c, b))
        else:
            ineqs.append((c, b, 1 << len(ineqs)))

    # equalities: substitute a dropped variable out of everything else
    while eqs:
        c, b = eqs.pop()
        v = next((j for j in sorted(drop) if c[j]), None)
        if v is None:
            ineqs.append((c, b, 1 << len(ineqs)))
            ineqs.append((tuple(-x for x in c), -b, 1 << len(ineqs)))
            continue
        a = c[v]
        sa = 1 if a > 0 else -1

        def sub(row, rb):
            f = row[v]
            if not f:
                return row, rb
            return ([abs(a) * x - sa * f * y for x, y in zip(row, c)], abs(a) * rb - sa * f * b)

        ineqs = [(*_normalize(*sub(r, rb)), hist) for r, rb, hist in ineqs]
        eqs = [_normalize(*sub(r, rb)) for r, rb in eqs]
        drop.discard(v)

    rows = _dedupe(ineqs)
    eliminated = 0
    while True:
        rows = [r for r in rows if not _trivial(r)]
        if any(not any(c) for c, _, _ in rows):
            return [Halfspace((0,) * len(keep), -1)]
        live = [j for j in drop if any(c[j] for c, _, _ in rows)]
        if not live:
            break

        def cost(j):
            p = sum(1 for c, _, _ in rows if c[j] > 0)
            n = sum(1 for c, _, _ in rows if c[j] < 0)
            return (p * n, j)

        v = min(live, key=cost)
        drop.discard(v)
        eliminated += 1
        pos = [r for r in rows if r[0][v] > 0]
        neg = [r for r in rows if r[0][v] < 0]
        out = [r for r in rows if r[0][v] == 0]
        for cp, bp, hp in pos:
            for cn, bn, hn in neg:
                hist = hp | hn
                if bin(hist).count("1") > eliminated + 1:
                    continue
                fp, fn = -cn[v], cp[v]
                coeffs = [fp * x + fn * y for x, y in zip(cp, cn)]
                out.append((*_normalize(coeffs, fp * bp + fn * bn), hist))
        rows = _dedupe(out)
        log.debug("eliminated x%d: %d rows", v, len(rows))
        if len(rows) > row_cap:
            raise ResourceLimitError(
                f"Fourier-Motzkin blow-up: {len(rows)} rows after eliminating {eliminated} variables "
                f"({len(drop)} left); row cap is {row_cap}"
            )
    return [Halfspace(tuple(c[j] for j in keep), b) for c, b, _ in rows]


def _trivial(row) -> bool:
    c, b, _ = row
    return not any(c) and b >= 0


def _dedupe(rows):
    best: dict[tuple[int, ...], tuple[int, int]] = {}
    for c, b, h in rows:
        old = best.get(c)
        if old is None or (b, bin(h).count("1")) < (old[0], bin(old[1]).count("1")):
            best[c] = (b, h)
    return [(c, b, h) for c, (b, h) in best.items()]
