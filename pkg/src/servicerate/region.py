"""Service rate regions: feasible allocations and their projection to rate space.

A rate vector ``lam`` is served by a recovery system with server capacity
``mu`` when it can be split into nonnegative per-recovery-set rates that sum
to ``lam[i]`` for each object and load no server beyond ``mu``.  The region is
the projection of that allocation polyhedron onto the ``k`` rate coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import InvalidArgumentError
from .gfmatrix import GenMatrix
from .ratpoly import (
    DEFAULT_ROW_CAP,
    EQ,
    OPTIMAL,
    Containment,
    DoubleDescription,
    Halfspace,
    LPResult,
    Polytope,
    contains,
    cross_section,
    fm_eliminate,
    frac,
    nonneg_orthant,
    remove_redundant,
    vertices,
)
from .ratpoly.lp import solve_standard
from .recovery import RecoverySystem, full_system, members, minimal_system, popcount

__all__ = [
    "Allocation",
    "rate_vector",
    "membership",
    "allocation_halfspaces",
    "exact_region",
    "region_max",
    "region_within",
    "cross_section",
    "mu_scaling_check",
    "minimal_full_check",
    "RegionComparison",
    "section",
    "separating_cut",
]

RateVector = tuple[Fraction, ...]

AUTO_FM_MAX_VARS = 16


def rate_vector(values: Sequence, k: int | None = None) -> RateVector:
    lam = tuple(frac(v) for v in values)
    if k is not None and len(lam) != k:
        raise InvalidArgumentError(f"expected {k} rates, got {len(lam)}")
    if any(v < 0 for v in lam):
        raise InvalidArgumentError(f"rates must be nonnegative, got {[str(v) for v in lam]}")
    return lam


@dataclass(frozen=True)
class Allocation:
    """Per-(object, recovery set) rates; keys are (0-based object, server mask)."""

    system: RecoverySystem
    weights: Mapping[tuple[int, int], Fraction]
    mu: Fraction = Fraction(1)

    def rates(self) -> RateVector:
        lam = [Fraction(0)] * self.system.k
        for (i, _), w in self.weights.items():
            lam[i] += w
        return tuple(lam)

    def server_loads(self) -> list[Fraction]:
        load = [Fraction(0)] * self.system.n
        for (_, R), w in self.weights.items():
            for j in members(R):
                load[j] += w
        return load

    def total_size_weighted(self) -> Fraction:
        """Sum of |R| * rate over all recovery sets (the summed server constraints)."""
        return sum((popcount(R) * w for (_, R), w in self.weights.items()), Fraction(0))

    def violations(self, lam: Sequence) -> list[str]:
        """Recheck the three allocation conditions without the LP solver."""
        out = []
        for (i, R), w in self.weights.items():
            if R not in self.system.families[i]:
                out.append(f"set {members(R)} not in family {i}")
            if w < 0:
                out.append(f"negative rate {w} on ({i}, {members(R)})")
        for i, (got, want) in enumerate(zip(self.rates(), lam)):
            if got != frac(want):
                out.append(f"object {i}: allocated {got}, requested {want}")
        for j, load in enumerate(self.server_loads()):
            if load > self.mu:
                out.append(f"server {j}: load {load} > {self.mu}")
        return out


def membership(sys: RecoverySystem, lam: Sequence, mu=1) -> Allocation | None:
    """A feasible allocation serving ``lam`` at capacity ``mu``, or None."""
    lam = rate_vector(lam, sys.k)
    mu = frac(mu)
    if mu <= 0:
        raise InvalidArgumentError(f"capacity must be positive, got {mu}")
    var = sys.variables()
    nv, n, k = len(var), sys.n, sys.k
    A, b = [], []
    for i in range(k):
        A.append([int(vi == i) for vi, _ in var] + [0] * n)
        b.append(lam[i])
    for j in range(n):
        row = [R >> j & 1 for _, R in var] + [0] * n
        row[nv + j] = 1
        A.append(row)
        b.append(mu)
    res = solve_standard([0] * (nv + n), A, b)
    if res.status != OPTIMAL:
        return None
    weights = {v: res.x[t] for t, v in enumerate(var) if res.x[t]}
    return Allocation(sys, weights, mu)


def allocation_halfspaces(sys: RecoverySystem, mu=1) -> list[Halfspace]:
    """Constraints over ``(lam_1..lam_k, x_1..x_V)``, x in :meth:`RecoverySystem.variables` order."""
    var = sys.variables()
    k = sys.k
    dim = k + len(var)
    hs = []
    for i in range(k):
        c = [0] * dim
        c[i] = -1
        for t, (vi, _) in enumerate(var):
            if vi == i:
                c[k + t] = 1
        hs.append(Halfspace(tuple(c), 0, EQ))
    for j in range(sys.n):
        c = [0] * dim
        for t, (_, R) in enumerate(var):
            if R >> j & 1:
                c[k + t] = 1
        hs.append(Halfspace(tuple(c), frac(mu)))
    hs.extend(nonneg_orthant(dim))
    return hs


def _exact_region_fm(sys: RecoverySystem, row_cap: int) -> Polytope:
    hs = allocation_halfspaces(sys)
    k = sys.k
    projected = fm_eliminate(hs, range(k, hs[0].dim), row_cap=row_cap)
    return Polytope(k, tuple(projected) + nonneg_orthant(k))


def separating_cut(sys: RecoverySystem, lam: Sequence) -> Halfspace | None:
    """A valid inequality of the region violated by ``lam``, or None if lam is inside.

    Every ``y >= 0`` on the servers with ``sum(y) == 1`` gives the valid cut
    ``sum_i lam_i * min_{R in R_i} y(R) <= 1``; the most violated one is
    found by LP.
    """
    lam = rate_vector(lam, sys.k)
    var = sys.variables()
    k, n, nv = sys.k, sys.n, len(var)
    # columns: u+ (k), u- (k), y (n), slack per (i, R)
    width = 2 * k + n + nv
    c = [lam[i] for i in range(k)] + [-lam[i] for i in range(k)] + [0] * (n + nv)
    A, b = [], []
    for t, (i, R) in enumerate(var):
        row = [0] * width
        row[i], row[k + i] = 1, -1
        for j in members(R):
            row[2 * k + j] = -1
        row[2 * k + n + t] = 1
        A.append(row)
        b.append(0)
    A.append([0] * (2 * k) + [1] * n + [0] * nv)
    b.append(1)
    res = solve_standard(c, A, b)
    if res.value <= 1:
        return None
    y = res.x[2 * k: 2 * k + n]
    u = [min(sum(y[j] for j in members(R)) for R in fam) for fam in sys.families]
    return Halfspace(tuple(u), 1).normalized()


def _exact_region_cuts(sys: RecoverySystem) -> tuple[Polytope, list]:
    k = sys.k
    upper = []
    for i in range(k):
        upper.append(region_max(sys, [int(t == i) for t in range(k)]).value)
    dd = DoubleDescription.box(upper)
    inside: set = set()
    while True:
        cut = None
        for v in dd.vertices:
            if v in inside:
                continue
            if membership(sys, v) is not None:
                inside.add(v)
                continue
            cut = separating_cut(sys, v)
            break
        if cut is None:
            return dd.polytope(), dd.vertices
        dd.add(cut)


def exact_region(sys: RecoverySystem, method: str = "auto", row_cap: int = DEFAULT_ROW_CAP) -> Polytope:
    """Irredundant H-representation of the service rate region at unit capacity.

    ``method`` is ``"fm"`` (Fourier-Motzkin on the allocation system),
    ``"cuts"`` (LP-separated cutting planes with incremental vertex
    tracking) or ``"auto"`` (FM for small systems, cuts otherwise).  Both
    routes are exact and give the same canonical result.  Vertices are
    cached on the result when k <= 3.
    """
    if method == "auto":
        method = "fm" if len(sys.variables()) <= AUTO_FM_MAX_VARS else "cuts"
    if method == "fm":
        P = remove_redundant(_exact_region_fm(sys, row_cap))
        verts = vertices(P) if sys.k <= 3 else None
    elif method == "cuts":
        P = remove_redundant(_exact_region_cuts(sys)[0])
        verts = vertices(P) if sys.k <= 3 else None
    else:
        raise InvalidArgumentError(f"unknown method {method!r}")
    return Polytope(sys.k, P.halfspaces, None if verts is None else tuple(verts))


def region_max(sys: RecoverySystem, objective: Sequence, mu=1) -> LPResult:
    """Maximize ``objective . lam`` over the region by LP on the allocation variables.

    The returned point is the rate vector of an optimal allocation.
    """
    if len(objective) != sys.k:
        raise InvalidArgumentError(f"objective of length {len(objective)} for k={sys.k}")
    var = sys.variables()
    nv, n = len(var), sys.n
    c = [frac(objective[vi]) for vi, _ in var] + [0] * n
    A, b = [], []
    for j in range(n):
        row = [R >> j & 1 for _, R in var] + [0] * n
        row[nv + j] = 1
        A.append(row)
        b.append(frac(mu))
    res = solve_standard(c, A, b)
    if res.status != OPTIMAL:
        return res
    lam = [Fraction(0)] * sys.k
    for t, (vi, _) in enumerate(var):
        lam[vi] += res.x[t]
    return LPResult(OPTIMAL, tuple(lam), res.value)


def region_within(sys: RecoverySystem, P: Polytope) -> Containment:
    """Decide region(sys) <= P without projecting, one LP per facet of P."""
    if P.dim != sys.k:
        raise InvalidArgumentError(f"dimension mismatch: polytope {P.dim}, k={sys.k}")
    for h in P.halfspaces:
        dirs = [(h.coeffs, h.bound)]
        if h.relation == EQ:
            dirs.append((tuple(-c for c in h.coeffs), -h.bound))
        for coeffs, bound in dirs:
            res = region_max(sys, coeffs)
            if res.value > bound:
                return Containment(False, res.x)
    return Containment(True)


def mu_scaling_check(sys: RecoverySystem, lam: Sequence, mu) -> bool:
    """True iff membership at capacity mu agrees with membership of lam/mu at capacity 1."""
    mu = frac(mu)
    if mu <= 0:
        raise InvalidArgumentError(f"capacity must be positive, got {mu}")
    lam = rate_vector(lam, sys.k)
    scaled = membership(sys, lam, mu) is not None
    unit = membership(sys, [v / mu for v in lam], 1) is not None
    return scaled == unit


@dataclass(frozen=True)
class RegionComparison:
    equal: bool
    witness: tuple[Fraction, ...] | None = None
    minimal: Polytope | None = None
    full: Polytope | None = None


def minimal_full_check(G: GenMatrix, row_cap: int = DEFAULT_ROW_CAP) -> RegionComparison:
    """Compare the regions of the minimal and the full recovery systems of G."""
    rmin = exact_region(minimal_system(G), row_cap=row_cap)
    rall = exact_region(full_system(G), row_cap=row_cap)
    fwd, back = contains(rmin, rall), contains(rall, rmin)
    witness = fwd.witness if not fwd else back.witness
    return RegionComparison(bool(fwd and back), witness, rmin, rall)


def section(P: Polytope, fixed: Mapping[int, object]) -> Polytope:
    """cross_section with vertices cached when the result has dimension <= 3."""
    S = cross_section(P, fixed)
    if S.dim <= 3:
        return Polytope(S.dim, S.halfspaces, tuple(vertices(S)))
    return S
