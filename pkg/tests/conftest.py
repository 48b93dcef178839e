import random
from itertools import product
from pathlib import Path

import pytest

from servicerate.errors import InvariantViolation
from servicerate.gfield import FieldSpec
from servicerate.gfmatrix import GenMatrix
from servicerate.io import load_matrix

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"
FIXTURE_FILES = sorted(FIXTURES.glob("*.txt"))

# filled by test_acceptance, echoed after the run
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[n])


def fixture_matrix(name: str) -> GenMatrix:
    return load_matrix(FIXTURES / name)


@pytest.fixture(scope="session")
def tern():
    return fixture_matrix("ternary_4_2.txt")


@pytest.fixture(scope="session")
def rm():
    return fixture_matrix("reed_muller.txt")


@pytest.fixture(scope="session")
def gf8():
    return fixture_matrix("gf8_5_3.txt")


@pytest.fixture(scope="session")
def gf7():
    return fixture_matrix("gf7_5_3.txt")


def random_matrix(rng: random.Random, q: int, k: int, n: int, systematic: bool = False) -> GenMatrix:
    F = FieldSpec.of_order(q)
    while True:
        if systematic:
            rows = tuple(
                tuple(int(t == i) for t in range(k)) + tuple(rng.randrange(q) for _ in range(n - k))
                for i in range(k)
            )
        else:
            rows = tuple(tuple(rng.randrange(q) for _ in range(n)) for _ in range(k))
        try:
            return GenMatrix(F, rows)
        except InvariantViolation:
            continue


# -- brute-force oracles, deliberately naive ----------------------------------

def brute_span(G: GenMatrix, cols) -> set:
    """Every linear combination of the chosen columns."""
    f = G.field
    vecs = [G.column(j) for j in cols]
    out = set()
    for coeffs in product(range(f.q), repeat=len(vecs)):
        acc = [0] * G.k
        for c, v in zip(coeffs, vecs):
            for t in range(G.k):
                acc[t] = f.add(acc[t], f.mul(c, v[t]))
        out.add(tuple(acc))
    return out


def brute_codewords(G: GenMatrix):
    f = G.field
    for msg in product(range(f.q), repeat=G.k):
        word = [0] * G.n
        for c, row in zip(msg, G.rows):
            for j in range(G.n):
                word[j] = f.add(word[j], f.mul(c, row[j]))
        yield tuple(word)


def brute_dual(G: GenMatrix):
    f = G.field
    for v in product(range(f.q), repeat=G.n):
        ok = True
        for row in G.rows:
            s = 0
            for a, b in zip(row, v):
                s = f.add(s, f.mul(a, b))
            if s:
                ok = False
                break
        if ok:
            yield v
