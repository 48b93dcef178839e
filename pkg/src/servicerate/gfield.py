"""Arithmetic in GF(p) and GF(p^m).

Elements are plain integers in ``range(q)``.  For ``m > 1`` the integer
``sum(c_j * p**j)`` stands for the polynomial ``sum(c_j * alpha**j)`` where
``alpha`` is a root of the modulus; the modulus itself is packed the same
way, so ``alpha^3 + alpha + 1`` over GF(2) is ``0b1011 == 11``.

:class:`FieldSpec` does the arithmetic on raw integers (that is what the
matrix and code routines use); :class:`FieldElement` wraps a value together
with its field for operator-style use and mismatch checking.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product

import numpy as np

from .errors import InvalidArgumentError

__all__ = [
    "FieldSpec",
    "FieldElement",
    "add",
    "mul",
    "inv",
    "is_prime",
    "prime_power",
    "is_irreducible",
    "smallest_irreducible",
]


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def prime_power(q: int) -> tuple[int, int] | None:
    """Return ``(p, m)`` with ``q == p**m``, or None if q is not a prime power."""
    if q < 2:
        return None
    p = 2
    while q % p:
        p += 1
    m, r = 0, q
    while r % p == 0:
        r //= p
        m += 1
    return (p, m) if r == 1 else None


# -- polynomials over GF(p) as coefficient lists, lowest degree first --------

def _unpack(v: int, p: int) -> list[int]:
    out = []
    while v:
        v, c = divmod(v, p)
        out.append(c)
    return out


def _pack(coeffs: list[int], p: int) -> int:
    v = 0
    for c in reversed(coeffs):
        v = v * p + c
    return v


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: list[int], b: list[int], p: int) -> list[int]:
    a = _trim(list(a))
    db = len(b) - 1
    lead_inv = pow(b[-1], p - 2, p)
    while len(a) - 1 >= db and a:
        c = a[-1] * lead_inv % p
        shift = len(a) - 1 - db
        for j, bj in enumerate(b):
            a[shift + j] = (a[shift + j] - c * bj) % p
        _trim(a)
    return a


def _poly_mul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return out


def is_irreducible(modulus: int, p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg//2."""
    f = _unpack(modulus, p)
    deg = len(f) - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for low in product(range(p), repeat=d):
            if not _poly_mod(f, list(low) + [1], p):
                return False
    return True


def smallest_irreducible(p: int, m: int) -> int:
    """Smallest (as a packed integer) monic irreducible polynomial of degree m."""
    for v in range(p**m, 2 * p**m):
        if is_irreducible(v, p):
            return v
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


@dataclass(frozen=True)
class FieldSpec:
    """GF(p^m); ``modulus`` is the packed monic modulus (None iff m == 1)."""

    p: int
    m: int = 1
    modulus: int | None = field(default=None)

    def __post_init__(self):
        if not is_prime(self.p):
            raise InvalidArgumentError(f"p={self.p} is not prime")
        if self.m < 1:
            raise InvalidArgumentError(f"m={self.m} must be positive")
        if self.m == 1:
            if self.modulus is not None:
                raise InvalidArgumentError("prime fields take no modulus")
            return
        if self.modulus is None:
            object.__setattr__(self, "modulus", smallest_irreducible(self.p, self.m))
            return
        coeffs = _unpack(self.modulus, self.p)
        if len(coeffs) - 1 != self.m or coeffs[-1] != 1:
            raise InvalidArgumentError(
                f"modulus {self.modulus} is not a monic polynomial of degree {self.m} over GF({self.p})"
            )
        if not is_irreducible(self.modulus, self.p):
            raise InvalidArgumentError(f"modulus {self.modulus} is reducible over GF({self.p})")

    @classmethod
    def of_order(cls, q: int, modulus: int | None = None) -> FieldSpec:
        pm = prime_power(q)
        if pm is None:
            raise InvalidArgumentError(f"q={q} is not a prime power")
        return cls(pm[0], pm[1], modulus)

    @property
    def q(self) -> int:
        return self.p**self.m

    def __str__(self):
        if self.m == 1:
            return f"GF({self.p})"
        return f"GF({self.q}; mod {self.modulus})"

    # -- raw integer arithmetic -------------------------------------------

    def check(self, a: int) -> int:
        if not (isinstance(a, (int, np.integer)) and 0 <= a < self.q):
            raise InvalidArgumentError(f"{a!r} is not an element of {self}")
        return int(a)

    def add(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a + b) % self.p
        return int(self.add_table[a, b])

    def neg(self, a: int) -> int:
        if self.m == 1:
            return -a % self.p
        return int(self._neg_table[a])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.m == 1:
            return a * b % self.p
        return int(self.mul_table[a, b])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError(f"0 has no inverse in {self}")
        if self.m == 1:
            return pow(a, self.p - 2, self.p)
        return self._inv_table[a]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        out = 1
        for _ in range(e):
            out = self.mul(out, a)
        return out

    def elements(self) -> range:
        return range(self.q)

    # -- lookup tables, built from polynomial arithmetic on first use -------

    def _slow_add(self, a: int, b: int) -> int:
        ca, cb = _unpack(a, self.p), _unpack(b, self.p)
        width = max(len(ca), len(cb))
        ca += [0] * (width - len(ca))
        cb += [0] * (width - len(cb))
        return _pack([(x + y) % self.p for x, y in zip(ca, cb)], self.p)

    def _slow_mul(self, a: int, b: int) -> int:
        prod = _poly_mul(_unpack(a, self.p), _unpack(b, self.p), self.p)
        return _pack(_poly_mod(prod, _unpack(self.modulus, self.p), self.p), self.p)

    @cached_property
    def add_table(self) -> np.ndarray:
        q = self.q
        if self.m == 1:
            r = np.arange(q)
            return (r[:, None] + r[None, :]) % q
        return np.array([[self._slow_add(a, b) for b in range(q)] for a in range(q)], dtype=np.int64)

    @cached_property
    def mul_table(self) -> np.ndarray:
        q = self.q
        if self.m == 1:
            r = np.arange(q)
            return (r[:, None] * r[None, :]) % q
        return np.array([[self._slow_mul(a, b) for b in range(q)] for a in range(q)], dtype=np.int64)

    @cached_property
    def _neg_table(self) -> list[int]:
        return [int(np.flatnonzero(self.add_table[a] == 0)[0]) for a in range(self.q)]

    @cached_property
    def _inv_table(self) -> list[int]:
        out = [0]
        for a in range(1, self.q):
            out.append(int(np.flatnonzero(self.mul_table[a] == 1)[0]))
        return out


@dataclass(frozen=True)
class FieldElement:
    value: int
    field: FieldSpec

    def __post_init__(self):
        self.field.check(self.value)

    def _other(self, other: FieldElement) -> int:
        if not isinstance(other, FieldElement):
            return NotImplemented
        if other.field != self.field:
            raise InvalidArgumentError(f"cannot combine elements of {self.field} and {other.field}")
        return other.value

    def __add__(self, other):
        return FieldElement(self.field.add(self.value, self._other(other)), self.field)

    def __sub__(self, other):
        return FieldElement(self.field.sub(self.value, self._other(other)), self.field)

    def __mul__(self, other):
        return FieldElement(self.field.mul(self.value, self._other(other)), self.field)

    def __truediv__(self, other):
        return FieldElement(self.field.div(self.value, self._other(other)), self.field)

    def __neg__(self):
        return FieldElement(self.field.neg(self.value), self.field)

    def __pow__(self, e: int):
        return FieldElement(self.field.pow(self.value, e), self.field)

    def inverse(self) -> FieldElement:
        return FieldElement(self.field.inv(self.value), self.field)

    def __int__(self):
        return self.value


def _checked(a: FieldElement, f: FieldSpec) -> int:
    if a.field != f:
        raise InvalidArgumentError(f"element of {a.field} used with {f}")
    return a.value


def add(a: FieldElement, b: FieldElement, f: FieldSpec) -> FieldElement:
    return FieldElement(f.add(_checked(a, f), _checked(b, f)), f)


def mul(a: FieldElement, b: FieldElement, f: FieldSpec) -> FieldElement:
    return FieldElement(f.mul(_checked(a, f), _checked(b, f)), f)


def inv(a: FieldElement, f: FieldSpec) -> FieldElement:
    return FieldElement(f.inv(_checked(a, f)), f)
