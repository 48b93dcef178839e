import random
from fractions import Fraction as Fr
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from servicerate.bounds import (
    LambdaEllBound,
    compare,
    ddb1,
    ddb1_for,
    ddb1_region,
    ddb2,
    ddb2_for,
    ddb2_region,
    mds_bound_for,
    mds_bound_region,
    tcb_for,
    tcb_halfspace,
    tcb_region,
)
from servicerate.errors import InvalidArgumentError, PreconditionError, ResourceLimitError
from servicerate.lincode import dual_code, object_profiles
from servicerate.ratpoly import Halfspace, Polytope, contains, nonneg_orthant, vertices
from servicerate.recovery import minimal_system
from servicerate.region import exact_region, region_within, section

from conftest import fixture_matrix, random_matrix

H = Halfspace
ORTHANT2 = set(nonneg_orthant(2))


def ddb1_direct(lam, d):
    return sum(min(t, 1) + (d - 1) * max(0, t - 1) for t in lam)


def ddb2_direct(lam, profiles):
    out = Fr(0)
    for t, p in zip(lam, profiles):
        ell = min(t, 1)
        out += (p.delta2 - 1) * (t - p.omega * ell) + (p.delta1 - 1) * p.omega * ell
    return out


def test_tcb_examples(tern, gf7):
    assert tcb_for(minimal_system(tern)) == H((1, 1), 4)
    assert tcb_for(minimal_system(gf7)) == H((1, 1, 1), 5)
    assert tcb_halfspace(3, 8, 2) == H((1, 1, 1), 4)
    with pytest.raises(InvalidArgumentError):
        tcb_halfspace(2, 4, 0)


def test_ddb1_cells_example(tern):
    b = ddb1_for(tern)
    assert set(b.cell_halfspaces()) == {H((1, 1), 4), H((2, 1), 5), H((1, 2), 5), H((2, 2), 6)}
    P = b.region()
    assert set(P.halfspaces) == {H((2, 1), 5), H((1, 2), 5), H((1, 1), 3)} | ORTHANT2
    assert set(vertices(P)) == {(0, 0), (Fr(5, 2), 0), (2, 1), (1, 2), (0, Fr(5, 2))}


def test_ddb1_collapses_at_dual_distance_two(gf7):
    P = ddb1_region(3, 5, 2)
    assert set(P.halfspaces) == {H((1, 1, 1), 5)} | set(nonneg_orthant(3))
    assert ddb1_for(gf7).region() == P


def test_mds_bound():
    b = ddb1(2, 6, 3)
    assert sorted(h.bound for h in b.cell_halfspaces()) == [6, 7, 7, 8]
    P = mds_bound_region(2, 6)
    assert set(P.halfspaces) == {H((2, 1), 7), H((1, 2), 7), H((1, 1), 4)} | ORTHANT2
    G = fixture_matrix("mds_6_2_7.txt")
    assert mds_bound_for(G).region() == P


def test_mds_bound_errors(rm):
    with pytest.raises(PreconditionError, match="d=4 != n-k\\+1=5"):
        mds_bound_for(rm)
    with pytest.raises(PreconditionError, match="ddb2"):
        ddb1_for(rm)


def test_ddb2_examples(rm, gf8, gf7):
    b = ddb2_for(rm)
    assert (b.lam_coeffs, b.ell_coeffs, b.bound) == ((4, 4, 4, 3), (-8, -8, -8, -2), 8)
    b = ddb2_for(gf8)
    assert (b.lam_coeffs, b.ell_coeffs, b.bound) == ((3, 3, 4), (-1, -2, -7), 5)
    b = ddb2_for(gf7)
    assert (b.lam_coeffs, b.ell_coeffs, b.bound) == ((2, 3, 3), (-2, -2, -2), 5)
    assert ddb2_region(object_profiles(gf7), gf7.n) == b.region()
    assert str(b) == "2*l1 +3*l2 +3*l3 -2*min(l1,1) -2*min(l2,1) -2*min(l3,1) <= 5"


def test_bound_validation():
    with pytest.raises(InvalidArgumentError):
        LambdaEllBound("x", (1, 1), (1, 0), 3)
    with pytest.raises(InvalidArgumentError):
        LambdaEllBound("x", (1, 1), (0,), 3)
    with pytest.raises(InvalidArgumentError):
        ddb1(2, 4, 1)
    with pytest.raises(ResourceLimitError):
        ddb1(17, 40, 3).cell_halfspaces()


@settings(max_examples=150, deadline=None)
@given(st.integers(2, 6), st.integers(3, 12), st.lists(st.integers(0, 12), min_size=3, max_size=3))
def test_cell_encoding_matches_ddb1_formula(d, n, raw):
    lam = [Fr(v, 4) for v in raw]
    b = ddb1(3, n, d)
    assert b.lhs(lam) == ddb1_direct(lam, d)
    in_cells = all(h.holds(lam) for h in b.cell_halfspaces())
    assert in_cells == (ddb1_direct(lam, d) <= n)
    assert b.region().contains_point(lam) == (ddb1_direct(lam, d) <= n)


def test_cell_encoding_matches_ddb2_formula(rm, gf8, gf7):
    for G in (rm, gf8, gf7):
        profs = object_profiles(G)
        b = ddb2(profs, G.n)
        P = b.region()
        for raw in product(range(0, 13, 3), repeat=G.k):
            lam = [Fr(v, 4) for v in raw]
            assert b.lhs(lam) == ddb2_direct(lam, profs)
            assert P.contains_point(lam) == (ddb2_direct(lam, profs) <= G.n)


def test_compare_sharp_example(tern):
    rep = compare(exact_region(minimal_system(tern)), mds_bound_for(tern).region(), "mds")
    assert rep.contains_exact and rep.sharp and rep.witness is None
    d = rep.as_dict()
    assert d["sharp"] is True and d["kind"] == "mds"


def test_compare_section_not_sharp(rm):
    exact = section(exact_region(minimal_system(rm)), {1: 0, 2: 0})
    bound = section(ddb2_for(rm).region(), {1: 0, 2: 0})
    rep = compare(exact, bound, "ddb2")
    assert rep.contains_exact and not rep.sharp
    assert bound.contains_point(rep.witness) and not exact.contains_point(rep.witness)


def test_ddb2_strictly_inside_ddb1(gf7):
    inner, outer = ddb2_for(gf7).region(), ddb1_for(gf7).region()
    rep = compare(inner, outer)
    assert rep.contains_exact and not rep.sharp
    assert rep.witness == (0, 5, 0)
    assert not contains(inner, outer)


def test_compare_outside():
    inner = Polytope(1, (H((1,), 2),) + nonneg_orthant(1))
    outer = Polytope(1, (H((1,), 1),) + nonneg_orthant(1))
    rep = compare(inner, outer)
    assert not rep.contains_exact and not rep.sharp and rep.witness == (2,)
    with pytest.raises(InvalidArgumentError):
        compare(inner, ddb1_region(2, 4, 3))


def test_bounds_contain_exact_on_fixtures(tern, rm, gf8, gf7):
    for G in (tern, rm, gf8, gf7):
        sys = minimal_system(G)
        assert region_within(sys, tcb_region(G.k, G.n, sys.min_size()))
        assert region_within(sys, ddb2_for(G).region())
        if G in (tern, gf7):
            assert region_within(sys, ddb1_for(G).region())


def test_soundness_random():
    rng = random.Random(99)
    for _ in range(25):
        q = rng.choice([2, 3, 4, 5, 7])
        k = rng.randint(2, 3)
        n = rng.randint(k + 1, 6)
        systematic = rng.random() < 0.6
        G = random_matrix(rng, q, k, n, systematic)
        sys = minimal_system(G)
        assert region_within(sys, ddb2_for(G).region())
        assert region_within(sys, tcb_region(k, n, sys.min_size()))
        if systematic:
            assert region_within(sys, ddb1_for(G).region())
            if dual_code(G).d_perp >= 3:
                assert contains(ddb1_for(G).region(), ddb2_for(G).region())


@pytest.mark.parametrize("name", ["mds_4_2_5.txt", "mds_6_2_7.txt", "mds_6_3_7.txt"])
def test_mds_bound_sharp_when_rate_at_most_half(name):
    G = fixture_matrix(name)
    assert G.k <= G.n - G.k
    rep = compare(exact_region(minimal_system(G)), mds_bound_for(G).region())
    assert rep.sharp
