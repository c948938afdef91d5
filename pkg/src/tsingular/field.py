"""Arithmetic in GF(q), q = p**e.

Elements are plain ints in ``range(q)``.  The base-p digits of a code are the
coefficients of a polynomial over GF(p), least significant digit first, taken
modulo a fixed monic irreducible polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import product
from typing import Iterator, Sequence

MAX_Q = 2**16
# full add/mul tables are built below this size; larger fields use polynomial arithmetic
TABLE_Q = 256


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def factor_prime_power(q: int) -> tuple[int, int]:
    """Return (p, e) with p**e == q, or raise FieldError."""
    if q < 2:
        raise FieldError(f"q={q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    e, r = 0, q
    while r % p == 0:
        r //= p
        e += 1
    if r != 1:
        raise FieldError(f"q={q} is not a prime power")
    return p, e


# -- polynomials over GF(p) as coefficient lists, constant term first --------

def _poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    """Remainder of a modulo the monic polynomial m."""
    r = _poly_trim([c % p for c in a])
    dm = len(m) - 1
    while len(r) - 1 >= dm and r:
        c = r[-1]
        shift = len(r) - 1 - dm
        for i, mc in enumerate(m):
            r[shift + i] = (r[shift + i] - c * mc) % p
        _poly_trim(r)
    return r


def _monic_polys(p: int, d: int) -> Iterator[tuple[int, ...]]:
    """Monic degree-d polynomials, lexicographic in coefficients from the constant term up."""
    for low in product(range(p), repeat=d):
        yield tuple(low) + (1,)


def is_irreducible(coeffs: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg//2."""
    d = len(coeffs) - 1
    if d < 1 or coeffs[-1] % p != 1:
        return False
    for dd in range(1, d // 2 + 1):
        for f in _monic_polys(p, dd):
            if not _poly_mod(coeffs, f, p):
                return False
    return True


def default_modulus(p: int, e: int) -> tuple[int, ...]:
    """Lexicographically least monic irreducible polynomial of degree e over GF(p)."""
    if not is_prime(p):
        raise FieldError(f"p={p} is not prime")
    if e < 1:
        raise FieldError(f"extension degree e={e} must be >= 1")
    for f in _monic_polys(p, e):
        if is_irreducible(f, p):
            return f
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


@dataclass(frozen=True)
class FieldSpec:
    """GF(p**e) with a fixed modulus.  Immutable; tables are built lazily."""

    p: int
    e: int
    modulus: tuple[int, ...]

    def __post_init__(self):
        if not is_prime(self.p):
            raise FieldError(f"p={self.p} is not prime")
        if self.e < 1:
            raise FieldError(f"extension degree e={self.e} must be >= 1")
        if self.p**self.e > MAX_Q:
            raise FieldError(f"q={self.p ** self.e} exceeds the supported maximum {MAX_Q}")
        m = tuple(self.modulus)
        object.__setattr__(self, "modulus", m)
        if len(m) != self.e + 1 or any(not 0 <= c < self.p for c in m):
            raise FieldError(f"modulus {m} must have e+1={self.e + 1} coefficients in [0, {self.p})")
        if not is_irreducible(m, self.p):
            raise FieldError(f"modulus {m} is not monic irreducible over GF({self.p})")

    @classmethod
    def from_q(cls, q: int, modulus: Sequence[int] | None = None) -> "FieldSpec":
        return _from_q(cls, q, None if modulus is None else tuple(modulus))

    @property
    def q(self) -> int:
        return self.p**self.e

    def __repr__(self):
        if self.e == 1:
            return f"GF({self.p})"
        return f"GF({self.q}; modulus={list(self.modulus)})"

    # -- code <-> polynomial ------------------------------------------------

    def _digits(self, a: int) -> list[int]:
        out = []
        for _ in range(self.e):
            a, r = divmod(a, self.p)
            out.append(r)
        return out

    def _code(self, digits: Sequence[int]) -> int:
        a = 0
        for c in reversed(digits):
            a = a * self.p + c
        return a

    def _check(self, a: int) -> None:
        if not 0 <= a < self.q:
            raise FieldError(f"element code {a} out of range for {self!r}")

    # -- slow reference arithmetic -----------------------------------------

    def _add_poly(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a + b) % self.p
        return self._code([(x + y) % self.p for x, y in zip(self._digits(a), self._digits(b))])

    def _neg_poly(self, a: int) -> int:
        if self.e == 1:
            return -a % self.p
        return self._code([-x % self.p for x in self._digits(a)])

    def _mul_poly(self, a: int, b: int) -> int:
        if self.e == 1:
            return a * b % self.p
        da, db = self._digits(a), self._digits(b)
        prod = [0] * (2 * self.e - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] += x * y
        r = _poly_mod(prod, self.modulus, self.p)
        return self._code(r + [0] * (self.e - len(r)))

    def _inv_slow(self, a: int) -> int:
        # a**(q-2) by square and multiply
        result, base, k = 1, a, self.q - 2
        while k:
            if k & 1:
                result = self._mul_poly(result, base)
            base = self._mul_poly(base, base)
            k >>= 1
        return result

    # -- tables ----------------------------------------------------------

    @cached_property
    def tables(self):
        """(add, mul, neg, inv) lookup tables, or None for large fields."""
        q = self.q
        if q > TABLE_Q:
            return None
        add = [[self._add_poly(a, b) for b in range(q)] for a in range(q)]
        mul = [[self._mul_poly(a, b) for b in range(q)] for a in range(q)]
        neg = [self._neg_poly(a) for a in range(q)]
        inv = [0] * q
        for a in range(1, q):
            for b in range(1, q):
                if mul[a][b] == 1:
                    inv[a] = b
                    break
        return add, mul, neg, inv

    # -- public arithmetic -------------------------------------------------

    def add(self, a: int, b: int) -> int:
        t = self.tables
        return t[0][a][b] if t else self._add_poly(a, b)

    def neg(self, a: int) -> int:
        t = self.tables
        return t[2][a] if t else self._neg_poly(a)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        t = self.tables
        return t[1][a][b] if t else self._mul_poly(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError(f"0 has no inverse in {self!r}")
        t = self.tables
        return t[3][a] if t else self._inv_slow(a)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def power(self, a: int, k: int) -> int:
        if k < 0:
            return self.power(self.inv(a), -k)
        result = 1
        for _ in range(k):
            result = self.mul(result, a)
        return result

    def elements(self) -> range:
        return range(self.q)

    # -- row kernels used by the matrix code ---------------------------------

    def axpy(self, f: int, x: Sequence[int], y: Sequence[int]) -> list[int]:
        """Return x + f*y entrywise."""
        t = self.tables
        if t:
            add, m = t[0], t[1][f]
            return [add[a][m[b]] for a, b in zip(x, y)]
        return [self.add(a, self.mul(f, b)) for a, b in zip(x, y)]

    def scale(self, f: int, x: Sequence[int]) -> list[int]:
        t = self.tables
        if t:
            m = t[1][f]
            return [m[a] for a in x]
        return [self.mul(f, a) for a in x]


@lru_cache(maxsize=64)
def _from_q(cls, q: int, modulus: tuple[int, ...] | None) -> FieldSpec:
    # shared instances keep the lazily built tables
    p, e = factor_prime_power(q)
    if modulus is None:
        modulus = default_modulus(p, e)
    return cls(p, e, modulus)


# module-level forms of the field operations

def add(a: int, b: int, spec: FieldSpec) -> int:
    spec._check(a), spec._check(b)
    return spec.add(a, b)


def neg(a: int, spec: FieldSpec) -> int:
    spec._check(a)
    return spec.neg(a)


def mul(a: int, b: int, spec: FieldSpec) -> int:
    spec._check(a), spec._check(b)
    return spec.mul(a, b)


def inv(a: int, spec: FieldSpec) -> int:
    spec._check(a)
    return spec.inv(a)


def enumerate_elements(spec: FieldSpec) -> Iterator[int]:
    yield from range(spec.q)


def gf(q: int, modulus: Sequence[int] | None = None) -> FieldSpec:
    """Shorthand for ``FieldSpec.from_q``."""
    return FieldSpec.from_q(q, modulus)
