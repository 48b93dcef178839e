import random
from fractions import Fraction as Fr
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from servicerate.bounds import tcb_region
from servicerate.errors import InvalidArgumentError
from servicerate.gfield import FieldSpec
from servicerate.gfmatrix import GenMatrix
from servicerate.ratpoly import Halfspace, contains, is_empty, lp_solve, remove_redundant
from servicerate.recovery import full_system, mask_of, minimal_system
from servicerate.region import (
    exact_region,
    membership,
    mu_scaling_check,
    minimal_full_check,
    region_max,
    region_within,
    section,
)

from conftest import fixture_matrix, random_matrix

PENTAGON_VERTS = {(0, 0), (Fr(5, 2), 0), (2, 1), (1, 2), (0, Fr(5, 2))}
TOY = GenMatrix(FieldSpec(3), ((1, 0, 1), (0, 1, 0)))


def check_allocation(sys, lam, alloc, mu=1):
    """Independent recheck of the three allocation conditions."""
    got = [Fr(0)] * sys.k
    load = [Fr(0)] * sys.n
    for (i, R), w in alloc.weights.items():
        assert w >= 0
        assert R in sys.families[i]
        got[i] += w
        for j in range(sys.n):
            if R >> j & 1:
                load[j] += w
    assert got == [Fr(v) for v in lam]
    assert all(x <= mu for x in load)
    assert alloc.violations(lam) == []


def test_membership_examples(tern):
    sys = minimal_system(tern)
    a = membership(sys, (2, 1))
    check_allocation(sys, (2, 1), a)
    assert a.server_loads() == [1, 1, 1, 1]
    assert membership(sys, (2, 2)) is None
    z = membership(sys, (0, 0))
    assert z is not None and z.weights == {}
    assert membership(sys, ("5/2", 0)) is not None
    assert membership(sys, ("5/2", "1/100")) is None


def test_membership_rejects_bad_input(tern):
    sys = minimal_system(tern)
    with pytest.raises(InvalidArgumentError):
        membership(sys, (1,))
    with pytest.raises(InvalidArgumentError):
        membership(sys, (-1, 0))
    with pytest.raises(InvalidArgumentError):
        membership(sys, (1, 0), mu=0)


@pytest.mark.parametrize("method", ["fm", "cuts", "auto"])
def test_exact_region_pentagon(tern, method):
    P = exact_region(minimal_system(tern), method)
    assert set(P.vertices) == PENTAGON_VERTS
    assert len(P.halfspaces) == 5


def test_toy_region():
    P = exact_region(minimal_system(TOY))
    expected = {Halfspace((1, 0), 2), Halfspace((0, 1), 1), Halfspace((-1, 0), 0), Halfspace((0, -1), 0)}
    assert set(P.halfspaces) == expected
    for x, y in product([Fr(i, 2) for i in range(6)], repeat=2):
        assert P.contains_point((x, y)) == (membership(minimal_system(TOY), (x, y)) is not None)


def test_methods_agree_on_fixtures(gf8, gf7):
    for G in (gf8, gf7):
        sys = minimal_system(G)
        a, b = exact_region(sys, "cuts"), exact_region(sys, "fm")
        assert set(a.halfspaces) == set(b.halfspaces)


def test_reed_muller_region(rm):
    P = exact_region(minimal_system(rm))
    assert set(P.halfspaces) >= {Halfspace((2, 2, 2, 3), 10), Halfspace((1, 1, 1, 1), 4)}
    assert membership(minimal_system(rm), (4, 0, 0, 0)) is not None
    assert P.contains_point((4, 0, 0, 0))
    sec = section(P, {1: 0, 2: 0})
    assert set(sec.vertices) == {(0, 0), (4, 0), (2, 2), (0, Fr(10, 3))}


def test_sections(tern):
    P = exact_region(minimal_system(tern))
    s = section(P, {1: 0})
    assert set(s.vertices) == {(0,), (Fr(5, 2),)}
    assert is_empty(section(P, {1: 3}))


def test_region_max(tern):
    sys = minimal_system(tern)
    r = region_max(sys, (1, 1))
    assert r.value == 3
    assert r.x in {(2, 1), (1, 2)}
    assert region_max(sys, (1, 0)).value == Fr(5, 2)
    with pytest.raises(InvalidArgumentError):
        region_max(sys, (1,))


def test_region_within(tern):
    sys = full_system(tern)
    P = exact_region(minimal_system(tern))
    assert region_within(sys, P)
    c = region_within(sys, P.with_halfspaces([Halfspace((1, 1), 2)]))
    assert not c and sum(c.witness) == 3


def test_mu_scaling_examples(tern):
    sys = minimal_system(tern)
    assert membership(sys, (4, 2), 2) is not None
    assert mu_scaling_check(sys, (4, 2), 2)
    assert mu_scaling_check(sys, (0, 0), 7)
    assert membership(sys, (5, 5), 2) is None
    assert mu_scaling_check(sys, (5, 5), 2)
    assert mu_scaling_check(sys, ("1/2", "1/4"), "1/2")


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 12), st.integers(0, 12), st.sampled_from(["1/3", "1/2", "1", "3/2", "2", "5"]))
def test_mu_scaling_grid(a, b, mu):
    sys = minimal_system(fixture_matrix("ternary_4_2.txt"))
    assert mu_scaling_check(sys, (Fr(a, 2), Fr(b, 2)), mu)


def test_minimal_and_full_regions_agree(tern):
    for G in (tern, TOY):
        rep = minimal_full_check(G)
        assert rep.equal and rep.witness is None


def test_minimal_and_full_agree_random_systematic():
    rng = random.Random(41)
    for _ in range(6):
        G = random_matrix(rng, 3, 2, 5, systematic=True)
        assert minimal_full_check(G).equal


def test_monotone_in_subsystems():
    rng = random.Random(7)
    for _ in range(15):
        G = random_matrix(rng, rng.choice([2, 3, 4]), 2, rng.randint(3, 5))
        big = full_system(G)
        sub = big.subsystem([rng.sample(f, rng.randint(1, len(f))) for f in big.families])
        Psub, Pbig = exact_region(sub), exact_region(big)
        assert contains(Pbig, Psub)
        for pt in product([Fr(i, 2) for i in range(7)], repeat=2):
            if membership(sub, pt) is not None:
                assert membership(big, pt) is not None


def test_downward_closure_and_grid_agreement():
    rng = random.Random(13)
    for _ in range(10):
        G = random_matrix(rng, rng.choice([2, 3, 5]), 2, rng.randint(3, 6))
        sys = minimal_system(G)
        P = exact_region(sys)
        for pt in product([Fr(i, 3) for i in range(0, 16, 2)], repeat=2):
            a = membership(sys, pt)
            assert P.contains_point(pt) == (a is not None)
            if a is not None:
                check_allocation(sys, pt, a)
                smaller = (pt[0] * Fr(1, 2), pt[1] * Fr(1, 3))
                assert membership(sys, smaller) is not None
                assert a.total_size_weighted() <= sys.n


def test_region_inside_total_capacity(tern, rm, gf8, gf7):
    for G in (tern, rm, gf8, gf7):
        sys = minimal_system(G)
        assert region_within(sys, tcb_region(G.k, G.n, sys.min_size()))


def test_region_is_irredundant(tern, gf7):
    for G in (tern, gf7):
        P = exact_region(minimal_system(G))
        assert len(remove_redundant(P).halfspaces) == len(P.halfspaces)
        for v in P.vertices:
            assert lp_solve(None, P.halfspaces, "feasibility", P.dim).status == "optimal"
            assert P.contains_point(v)


def test_single_object_axis_points(rm):
    # four disjoint pairs serve object 1 at rate 4
    sys = minimal_system(rm)
    pairs = [R for R in sys.families[0] if bin(R).count("1") == 2]
    assert len(pairs) == 4 and mask_of(range(8)) == sum(pairs)
