import random
from math import log

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from servicerate.errors import InvalidArgumentError, InvariantViolation
from servicerate.gfield import FieldSpec
from servicerate.gfmatrix import GenMatrix, in_span, is_systematic, null_space, rank, transpose
from servicerate.lincode import extend

from conftest import brute_codewords, brute_span

F2, F3, F7 = FieldSpec(2), FieldSpec(3), FieldSpec(7)


def brute_rank(rows, f):
    span = {tuple([0] * len(rows[0]))}
    for r in rows:
        span = {tuple(f.add(x, f.mul(c, y)) for x, y in zip(v, r)) for v in span for c in range(f.q)}
    return round(log(len(span), f.q))


def test_rank_examples(tern, gf8):
    assert rank(tern.rows, F3) == 2
    assert rank([[0, 0], [0, 0]], F3) == 0
    assert rank(gf8.rows, gf8.field) == 3
    assert brute_rank(gf8.rows, gf8.field) == 3


@settings(max_examples=150, deadline=None)
@given(st.sampled_from([2, 3, 4, 5, 7, 8]), st.integers(1, 4), st.integers(1, 5), st.randoms())
def test_rank_matches_span_count_and_transpose(q, r, c, rnd):
    f = FieldSpec.of_order(q)
    rows = [[rnd.randrange(q) for _ in range(c)] for _ in range(r)]
    rk = rank(rows, f)
    assert rk == rank(transpose(rows), f)
    assert rk == brute_rank(rows, f)
    ns = null_space(rows, f)
    assert len(ns) == c - rk
    for y in ns:
        for row in rows:
            s = 0
            for a, b in zip(row, y):
                s = f.add(s, f.mul(a, b))
            assert s == 0


def test_in_span_examples(tern):
    e1 = (1, 0)
    assert in_span(e1, [tern.column(1), tern.column(2)], F3)
    assert not in_span(e1, [tern.column(1)], F3)
    assert in_span((0, 0), [tern.column(1)], F3)
    assert in_span((0, 0), [], F3)
    with pytest.raises(InvalidArgumentError):
        in_span((1, 0, 0), [tern.column(1)], F3)


def test_in_span_matches_brute(gf8):
    rng = random.Random(3)
    for _ in range(40):
        cols = rng.sample(range(gf8.n), rng.randint(1, 3))
        span = brute_span(gf8, cols)
        for i in range(gf8.k):
            assert in_span(gf8.unit(i), [gf8.column(j) for j in cols], gf8.field) == (gf8.unit(i) in span)


def test_every_unit_vector_in_full_column_span(rm):
    for i in range(rm.k):
        assert in_span(rm.unit(i), rm.columns, rm.field)


def test_is_systematic(tern, rm, gf7):
    assert is_systematic(tern)
    assert not is_systematic(rm)
    assert is_systematic(gf7)


def test_invariants():
    with pytest.raises(InvariantViolation, match="all-zero column at index 2"):
        GenMatrix(F3, ((1, 0, 1), (0, 0, 1)))
    with pytest.raises(InvariantViolation, match="rank 1 < k=2"):
        GenMatrix(F3, ((1, 1, 1), (2, 2, 2)))
    with pytest.raises(InvariantViolation, match="n > k >= 2"):
        GenMatrix(F3, ((1, 0), (0, 1)))
    with pytest.raises(InvariantViolation, match="n > k >= 2"):
        GenMatrix(F3, ((1, 1, 1),))
    with pytest.raises(InvariantViolation, match="outside"):
        GenMatrix(F3, ((1, 0, 3), (0, 1, 1)))
    with pytest.raises(InvariantViolation, match="entries"):
        GenMatrix(F3, ((1, 0, 1), (0, 1)))


def test_extend(tern, rm):
    assert extend(tern, 0).column(4) == (1, 0)
    assert extend(tern, 1).column(4) == (0, 1)
    E = extend(rm, 3)
    assert (E.k, E.n) == (4, 9)
    assert E.column(8) == (0, 0, 0, 1)
    with pytest.raises(InvalidArgumentError):
        extend(tern, 2)


def test_brute_codeword_count(tern):
    assert len(set(brute_codewords(tern))) == 9
