"""Codes attached to a generator matrix: C, its dual, and the extended codes C_i.

Everything here is computed by exhaustive enumeration of codewords, which is
exact and fast enough for the desk-scale matrices the package targets.  The
enumeration is refused above :data:`ENUMERATION_CAP` codewords.

Object indices are 0-based throughout the library.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .errors import InvalidArgumentError, PreconditionError, ResourceLimitError
from .gfield import FieldSpec
from .gfmatrix import GenMatrix, is_systematic, null_space

ENUMERATION_CAP = 2**24
_CHUNK = 1 << 15


def _check_cap(q: int, dim: int, what: str) -> None:
    count = q**dim
    if count > ENUMERATION_CAP:
        raise ResourceLimitError(
            f"enumerating {what} needs {count} codewords (q={q}, dim={dim}); cap is {ENUMERATION_CAP}"
        )


def iter_codewords(basis: Sequence[Sequence[int]], f: FieldSpec) -> Iterator[np.ndarray]:
    """Yield all q^r codewords spanned by the r basis rows, in chunks.

    Each chunk is an ``(N, n)`` integer array.  The zero word comes first.
    """
    B = np.array(basis, dtype=np.int64)
    r, n = B.shape if B.size else (0, 0)
    q = f.q
    total = q**r
    for start in range(0, total, _CHUNK):
        idx = np.arange(start, min(start + _CHUNK, total), dtype=np.int64)
        coeffs = np.stack([(idx // q**t) % q for t in range(r)], axis=1) if r else np.zeros((len(idx), 0), np.int64)
        if f.m == 1:
            yield (coeffs @ B) % q if r else np.zeros((len(idx), n), np.int64)
            continue
        words = np.zeros((len(idx), n), dtype=np.int64)
        for t in range(r):
            term = f.mul_table[coeffs[:, t][:, None], B[t][None, :]]
            words = f.add_table[words, term]
        yield words


def support_masks(words: np.ndarray) -> np.ndarray:
    """Bitmask of the Hamming support of each row (bit j set iff entry j != 0)."""
    nz = (words != 0).astype(np.int64)
    return nz @ (np.int64(1) << np.arange(words.shape[1], dtype=np.int64))


def _min_nonzero_weight(basis, f: FieldSpec) -> int:
    best = None
    for words in iter_codewords(basis, f):
        w = (words != 0).sum(axis=1)
        w = w[w > 0]
        if w.size:
            m = int(w.min())
            best = m if best is None else min(best, m)
    return best


@dataclass(frozen=True)
class DualCode:
    """Null space of the row space of ``G`` and its minimum distance."""

    n: int
    basis: tuple[tuple[int, ...], ...]
    d_perp: int


def dual_code(G: GenMatrix) -> DualCode:
    f = G.field
    _check_cap(f.q, G.n - G.k, "the dual code")
    basis = tuple(tuple(r) for r in null_space(G.rows, f))
    return DualCode(G.n, basis, _min_nonzero_weight(basis, f))


def min_distance(G: GenMatrix) -> int:
    """Minimum Hamming weight of the code generated by ``G``."""
    _check_cap(G.field.q, G.k, "the code")
    return _min_nonzero_weight(G.rows, G.field)


def is_mds(G: GenMatrix) -> bool:
    return min_distance(G) == G.n - G.k + 1


def extend(G: GenMatrix, i: int) -> GenMatrix:
    """``(G | e_i^T)``: the generator of the extended code C_i."""
    e = G.unit(i)
    return GenMatrix(G.field, tuple(row + (e[r],) for r, row in enumerate(G.rows)))


def covering_dual_words(G: GenMatrix, i: int) -> tuple[np.ndarray, np.ndarray]:
    """Weights and supports of the words of dual(C_i) that are nonzero at position n+1.

    Supports are n+1 bit masks; bit n is the appended coordinate.
    """
    Gi = extend(G, i)
    f = G.field
    _check_cap(f.q, Gi.n - Gi.k, f"the dual of C_{i + 1}")
    basis = null_space(Gi.rows, f)
    weights, supports = [], []
    for words in iter_codewords(basis, f):
        words = words[words[:, G.n] != 0]
        weights.append((words != 0).sum(axis=1))
        supports.append(support_masks(words))
    return np.concatenate(weights), np.concatenate(supports)


@dataclass(frozen=True)
class ObjectProfile:
    """Dual parameters of one object (Gamma_i, gamma_i, delta_i^1, delta_i^2, omega_i)."""

    object: int
    gamma_set: frozenset[int]
    delta1: int
    delta2: int
    omega: int
    # distinct supports (n-bit masks, position n+1 removed) of the weight-delta1 words
    min_supports: tuple[int, ...]

    @property
    def gamma(self) -> int:
        return len(self.gamma_set)

    def as_dict(self) -> dict:
        return {
            "object": self.object + 1,
            "Gamma": sorted(self.gamma_set),
            "gamma": self.gamma,
            "delta1": self.delta1,
            "delta2": self.delta2,
            "omega": self.omega,
        }


def object_profile(G: GenMatrix, i: int) -> ObjectProfile:
    weights, supports = covering_dual_words(G, i)
    gamma_set = frozenset(int(w) for w in np.unique(weights))
    ordered = sorted(gamma_set)
    delta1 = ordered[0]
    delta2 = ordered[1] if len(ordered) > 1 else delta1
    at_min = weights == delta1
    raw = int(at_min.sum())
    q1 = G.field.q - 1
    if raw % q1:
        raise AssertionError(f"{raw} minimum-weight words is not a multiple of q-1={q1}")
    low = (1 << G.n) - 1
    mins = tuple(sorted({int(s) & low for s in supports[at_min]}))
    return ObjectProfile(i, gamma_set, delta1, delta2, raw // q1, mins)


def object_profiles(G: GenMatrix) -> list[ObjectProfile]:
    return [object_profile(G, i) for i in range(G.k)]


@dataclass(frozen=True)
class SystematicProfileReport:
    passed: bool
    d_perp: int
    failing_object: int | None = None
    reason: str = ""


def check_systematic_profiles(G: GenMatrix) -> SystematicProfileReport:
    """For systematic G with dual distance >= 3, check every object has
    delta1 == 2, omega == 1 and delta2 >= d_perp."""
    if not is_systematic(G):
        raise PreconditionError("generator matrix is not systematic")
    d = dual_code(G).d_perp
    if d < 3:
        raise PreconditionError(f"dual distance {d} < 3")
    for prof in object_profiles(G):
        bad = []
        if prof.delta1 != 2:
            bad.append(f"delta1={prof.delta1}")
        if prof.omega != 1:
            bad.append(f"omega={prof.omega}")
        if prof.delta2 < d:
            bad.append(f"delta2={prof.delta2} < {d}")
        if bad:
            return SystematicProfileReport(False, d, prof.object, ", ".join(bad))
    return SystematicProfileReport(True, d)


def check_index(G: GenMatrix, i: int) -> None:
    if not 0 <= i < G.k:
        raise InvalidArgumentError(f"object index {i} out of range for k={G.k}")
