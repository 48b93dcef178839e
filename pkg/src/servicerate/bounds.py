"""Outer bounds on the service rate region and their comparison with the exact region.

The two dual-distance bounds share one shape: with ``ell_i = min(lam_i, 1)``,

    sum_i  a_i * lam_i + e_i * ell_i  <=  n,      e_i <= 0.

Each summand is the convex piecewise-linear ``max((a_i + e_i) t, a_i t + e_i)``
on ``t >= 0``, so the region is cut out by the 2^k halfspaces obtained by
picking one branch per coordinate.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Sequence

from .errors import InvalidArgumentError, PreconditionError, ResourceLimitError
from .gfmatrix import GenMatrix, is_systematic
from .io import polytope_dict
from .lincode import ObjectProfile, dual_code, min_distance, object_profiles
from .ratpoly import Halfspace, Polytope, contains, frac, frac_str, nonneg_orthant, remove_redundant
from .recovery import RecoverySystem

MAX_CELL_K = 16


@dataclass(frozen=True)
class LambdaEllBound:
    """``sum(lam_coeffs[i]*lam_i + ell_coeffs[i]*min(lam_i, 1)) <= bound``."""

    kind: str
    lam_coeffs: tuple[int, ...]
    ell_coeffs: tuple[int, ...]
    bound: int

    def __post_init__(self):
        if len(self.lam_coeffs) != len(self.ell_coeffs):
            raise InvalidArgumentError("coefficient vectors differ in length")
        if any(e > 0 for e in self.ell_coeffs):
            raise InvalidArgumentError("positive min-term coefficient makes the bound non-convex")

    @property
    def k(self) -> int:
        return len(self.lam_coeffs)

    def lhs(self, lam: Sequence) -> Fraction:
        lam = [frac(v) for v in lam]
        return sum((a * t + e * min(t, 1) for a, e, t in zip(self.lam_coeffs, self.ell_coeffs, lam)), Fraction(0))

    def holds(self, lam: Sequence) -> bool:
        return all(frac(v) >= 0 for v in lam) and self.lhs(lam) <= self.bound

    def cell_halfspaces(self) -> list[Halfspace]:
        """All 2^k branch choices; coordinate i on its slope-only branch or its offset branch."""
        if self.k > MAX_CELL_K:
            raise ResourceLimitError(f"2^{self.k} cell expansion exceeds the k <= {MAX_CELL_K} limit")
        out = []
        for choice in product((False, True), repeat=self.k):
            coeffs, rhs = [], self.bound
            for a, e, offset in zip(self.lam_coeffs, self.ell_coeffs, choice):
                if offset:
                    coeffs.append(a)
                    rhs -= e
                else:
                    coeffs.append(a + e)
            out.append(Halfspace(tuple(coeffs), rhs))
        return out

    def region(self) -> Polytope:
        return remove_redundant(Polytope(self.k, tuple(self.cell_halfspaces()) + nonneg_orthant(self.k)))

    def __str__(self):
        parts = []
        for i, a in enumerate(self.lam_coeffs, 1):
            if a:
                parts.append(f"{a:+d}*l{i}")
        for i, e in enumerate(self.ell_coeffs, 1):
            if e:
                parts.append(f"{e:+d}*min(l{i},1)")
        return f"{' '.join(parts).lstrip('+')} <= {self.bound}"

    def as_dict(self) -> dict:
        return {"lam_coeffs": list(self.lam_coeffs), "ell_coeffs": list(self.ell_coeffs), "bound": self.bound}


def tcb_halfspace(k: int, n: int, M: int) -> Halfspace:
    """``lam_1 + ... + lam_k <= n / M`` for recovery sets of size >= M."""
    if M < 1:
        raise InvalidArgumentError(f"minimum recovery set size must be >= 1, got {M}")
    return Halfspace((1,) * k, Fraction(n, M))


def tcb_region(k: int, n: int, M: int) -> Polytope:
    return Polytope(k, (tcb_halfspace(k, n, M),) + nonneg_orthant(k))


def ddb1(k: int, n: int, d_perp: int) -> LambdaEllBound:
    """``sum min(lam_i,1) + (d-1) max(0, lam_i - 1) <= n`` rewritten in lam/ell form."""
    if d_perp < 2:
        raise InvalidArgumentError(f"dual distance must be >= 2, got {d_perp}")
    return LambdaEllBound("ddb1", (d_perp - 1,) * k, (-(d_perp - 2),) * k, n)


def ddb1_region(k: int, n: int, d_perp: int) -> Polytope:
    return ddb1(k, n, d_perp).region()


def mds_bound_region(k: int, n: int) -> Polytope:
    """First dual-distance bound with the MDS dual distance k + 1."""
    return ddb1_region(k, n, k + 1)


def ddb2(profiles: Sequence[ObjectProfile], n: int) -> LambdaEllBound:
    lam, ell = [], []
    for p in profiles:
        if not (p.delta2 >= p.delta1 >= 2 and p.omega >= 1):
            raise InvalidArgumentError(f"invalid profile for object {p.object + 1}: {p}")
        lam.append(p.delta2 - 1)
        ell.append(-p.omega * (p.delta2 - p.delta1))
    return LambdaEllBound("ddb2", tuple(lam), tuple(ell), n)


def ddb2_region(profiles: Sequence[ObjectProfile], n: int) -> Polytope:
    return ddb2(profiles, n).region()


# -- matrix-level entry points that verify hypotheses -----------------------

def ddb1_for(G: GenMatrix) -> LambdaEllBound:
    if not is_systematic(G):
        raise PreconditionError(
            "the first dual distance bound needs a systematic generator matrix; use ddb2 instead"
        )
    return ddb1(G.k, G.n, dual_code(G).d_perp)


def mds_bound_for(G: GenMatrix) -> LambdaEllBound:
    d = min_distance(G)
    if d != G.n - G.k + 1:
        raise PreconditionError(f"code is not MDS: d={d} != n-k+1={G.n - G.k + 1}")
    if not is_systematic(G):
        raise PreconditionError("the MDS bound needs a systematic generator matrix")
    d_perp = dual_code(G).d_perp
    if d_perp != G.k + 1:
        raise AssertionError(f"MDS code with dual distance {d_perp} != k+1")  # pragma: no cover
    return ddb1(G.k, G.n, G.k + 1)


def ddb2_for(G: GenMatrix) -> LambdaEllBound:
    return ddb2(object_profiles(G), G.n)


def tcb_for(sys: RecoverySystem) -> Halfspace:
    return tcb_halfspace(sys.k, sys.n, sys.min_size())


@dataclass(frozen=True)
class BoundReport:
    kind: str
    region: Polytope
    contains_exact: bool
    sharp: bool
    witness: tuple[Fraction, ...] | None = None
    inequality: LambdaEllBound | None = None

    def as_dict(self) -> dict:
        out = {
            "kind": self.kind,
            "halfspaces": polytope_dict(self.region)["halfspaces"],
            "contains_exact": self.contains_exact,
            "sharp": self.sharp,
            "witness": None if self.witness is None else [frac_str(v) for v in self.witness],
        }
        if self.inequality is not None:
            out["inequality"] = self.inequality.as_dict()
        return out


def compare(exact: Polytope, bound: Polytope, kind: str = "bound",
            inequality: LambdaEllBound | None = None) -> BoundReport:
    """Is the exact region inside the bound, and is the bound sharp (equal)?"""
    if exact.dim != bound.dim:
        raise InvalidArgumentError(f"dimension mismatch: exact {exact.dim}, bound {bound.dim}")
    inner = contains(bound, exact)
    if not inner:
        return BoundReport(kind, bound, False, False, inner.witness, inequality)
    outer = contains(exact, bound)
    return BoundReport(kind, bound, True, bool(outer), outer.witness, inequality)
