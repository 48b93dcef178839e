"""Recovery sets: which server subsets can rebuild which object.

Server subsets are stored as ``int`` bitmasks (bit j = server j, 0-based).
Families are tuples of masks in canonical order, see :func:`sort_family`.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .errors import InvalidArgumentError, PreconditionError, ResourceLimitError
from .gfmatrix import GenMatrix, in_span, is_systematic
from .lincode import covering_dual_words, dual_code, iter_codewords, support_masks

ALL_SETS_MAX_N = 20


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for j in indices:
        m |= 1 << j
    return m


def members(mask: int) -> list[int]:
    out, j = [], 0
    while mask:
        if mask & 1:
            out.append(j)
        mask >>= 1
        j += 1
    return out


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def sort_family(masks: Iterable[int]) -> tuple[int, ...]:
    """Sort by size, then lexicographically by sorted member list."""
    return tuple(sorted(set(masks), key=lambda m: (popcount(m), members(m))))


def minimal_members(masks: Iterable[int]) -> tuple[int, ...]:
    """Inclusion-minimal elements of a family of masks."""
    keep: list[int] = []
    for m in sorted(set(masks), key=popcount):
        if not any(k & m == k for k in keep):
            keep.append(m)
    return sort_family(keep)


def is_recovery_set(G: GenMatrix, i: int, R: int) -> bool:
    if R >> G.n:
        raise InvalidArgumentError(f"server mask {R:b} exceeds n={G.n}")
    if not R:
        return False
    return in_span(G.unit(i), [G.column(j) for j in members(R)], G.field)


@lru_cache(maxsize=256)
def all_recovery_sets(G: GenMatrix, i: int) -> tuple[int, ...]:
    """Every subset R of servers whose columns span e_i (2^n scan)."""
    if G.n > ALL_SETS_MAX_N:
        raise ResourceLimitError(
            f"listing all recovery sets scans 2^{G.n} subsets (limit n <= {ALL_SETS_MAX_N}); use minimal sets"
        )
    G.unit(i)
    return sort_family(R for R in range(1, 1 << G.n) if is_recovery_set(G, i, R))


def recovery_sets_via_dual(G: GenMatrix, i: int) -> tuple[int, ...]:
    """Supports (minus position n+1) of dual(C_i) words that cover position n+1."""
    _, supports = covering_dual_words(G, i)
    low = (1 << G.n) - 1
    return sort_family(int(s) & low for s in np.unique(supports))


def minimal_recovery_sets(G: GenMatrix, i: int) -> tuple[int, ...]:
    return minimal_members(recovery_sets_via_dual(G, i))


def systematic_recovery_check(G: GenMatrix, i: int, R: int) -> bool:
    """Recovery test for systematic G that only looks at the dual code C^perp.

    R recovers object i iff i is in R, or some dual word has i in its
    support and support inside R + {i}.
    """
    if not is_systematic(G):
        raise PreconditionError("generator matrix is not systematic")
    if R >> i & 1:
        return True
    allowed = R | (1 << i)
    return any(s >> i & 1 and not s & ~allowed for s in _dual_supports(G))


@lru_cache(maxsize=64)
def _dual_supports(G: GenMatrix) -> frozenset[int]:
    dual = dual_code(G)
    out: set[int] = set()
    for words in iter_codewords(dual.basis, G.field):
        out.update(int(s) for s in np.unique(support_masks(words)))
    out.discard(0)
    return frozenset(out)


@dataclass(frozen=True)
class RecoverySystem:
    """One nonempty family of recovery sets per object."""

    matrix: GenMatrix
    families: tuple[tuple[int, ...], ...]
    kind: str = "custom"

    def __post_init__(self):
        G = self.matrix
        fams = tuple(sort_family(f) for f in self.families)
        object.__setattr__(self, "families", fams)
        if len(fams) != G.k:
            raise InvalidArgumentError(f"{len(fams)} families given for k={G.k} objects")
        if self.kind not in ("all", "minimal", "custom"):
            raise InvalidArgumentError(f"unknown recovery system kind {self.kind!r}")
        for i, fam in enumerate(fams):
            if not fam:
                raise InvalidArgumentError(f"family for object {i + 1} is empty")
            if self.kind == "all" and fam == all_recovery_sets(G, i):
                continue
            for R in fam:
                if not is_recovery_set(G, i, R):
                    raise InvalidArgumentError(
                        f"{{{', '.join(str(j + 1) for j in members(R))}}} does not recover object {i + 1}"
                    )
            if self.kind == "minimal" and minimal_members(fam) != fam:
                raise InvalidArgumentError(f"family for object {i + 1} is not inclusion-minimal")

    @property
    def k(self) -> int:
        return self.matrix.k

    @property
    def n(self) -> int:
        return self.matrix.n

    def variables(self) -> list[tuple[int, int]]:
        """(object, mask) pairs in a fixed order; one allocation variable each."""
        return [(i, R) for i, fam in enumerate(self.families) for R in fam]

    def min_size(self) -> int:
        return min(popcount(R) for fam in self.families for R in fam)

    def subsystem(self, families: Sequence[Iterable[int]]) -> RecoverySystem:
        return RecoverySystem(self.matrix, tuple(tuple(f) for f in families), "custom")


def minimal_system(G: GenMatrix) -> RecoverySystem:
    return RecoverySystem(G, tuple(minimal_recovery_sets(G, i) for i in range(G.k)), "minimal")


def full_system(G: GenMatrix) -> RecoverySystem:
    return RecoverySystem(G, tuple(all_recovery_sets(G, i) for i in range(G.k)), "all")
