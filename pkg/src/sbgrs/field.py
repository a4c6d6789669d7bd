"""Finite fields GF(p^m) with elements encoded as integers.

An element with polynomial coefficients c_0..c_{m-1} (low degree first) is
stored as the integer sum(c_i * p**i).  Fields up to 2**16 elements use
exp/log/Zech tables built from a primitive element; larger fields fall back
to polynomial multiply-and-reduce.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product
from typing import Iterator, Sequence

import numpy as np

MAX_Q = 1 << 20
TABLE_MAX_Q = 1 << 16


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


def prime_power(q: int) -> tuple[int, int] | None:
    """Return (p, m) with q == p**m, or None if q is not a prime power."""
    if q < 2:
        return None
    p = 2
    while p * p <= q and q % p:
        p += 1
    if q % p:
        p = q
    m = 0
    r = q
    while r % p == 0:
        r //= p
        m += 1
    return (p, m) if r == 1 else None


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# --- polynomials over GF(p), coefficient lists low degree first -------------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a = _trim(list(a))
    b = _trim(list(b))
    inv_lead = pow(b[-1], p - 2, p)
    while len(a) >= len(b):
        c = a[-1] * inv_lead % p
        shift = len(a) - len(b)
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bi) % p
        _trim(a)
    return a


def is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg//2."""
    poly = _trim(list(poly))
    deg = len(poly) - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for low in product(range(p), repeat=d):
            if not _poly_mod(poly, list(low) + [1], p):
                return False
    return True


@lru_cache(maxsize=None)
def smallest_irreducible(p: int, m: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree m.

    Coefficient tuples are compared constant term first.
    """
    if m == 1:
        return (0, 1)
    for low in product(range(p), repeat=m):
        cand = list(low) + [1]
        if low[0] != 0 and is_irreducible(cand, p):
            return tuple(cand)
    raise AssertionError(f"no irreducible polynomial of degree {m} over GF({p})")


class GF:
    """The field GF(p^m); immutable after construction.

    Elements are plain ints in ``range(q)``.  Serializes as
    ``{"p": p, "m": m, "irreducible": [...]}``.
    """

    def __init__(self, p: int, m: int = 1, irreducible: Sequence[int] | None = None):
        if not is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        if m < 1:
            raise ValueError("extension degree must be >= 1")
        if p ** m > MAX_Q:
            raise ValueError(f"field size {p}^{m} exceeds supported maximum {MAX_Q}")
        if irreducible is None:
            irreducible = smallest_irreducible(p, m)
        irreducible = tuple(int(c) for c in irreducible)
        if m == 1:
            if irreducible != (0, 1):
                raise ValueError("prime fields use the placeholder polynomial [0, 1]")
        elif (len(irreducible) != m + 1 or irreducible[-1] != 1
              or any(not 0 <= c < p for c in irreducible)
              or not is_irreducible(irreducible, p)):
            raise ValueError(f"{list(irreducible)} is not a monic irreducible of degree {m}")
        self.p = p
        self.m = m
        self.q = p ** m
        self.irreducible = irreducible
        self._exp: list[int] | None = None
        self._log: list[int] | None = None
        self._zech: list[int] | None = None
        self._tables_np = None
        if self.q <= TABLE_MAX_Q:
            self._build_tables()

    # identity / serialization

    def _key(self):
        return (self.p, self.m, self.irreducible)

    def __eq__(self, other):
        return isinstance(other, GF) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"GF({self.p}^{self.m})" if self.m > 1 else f"GF({self.p})"

    def to_json(self) -> dict:
        return {"p": self.p, "m": self.m, "irreducible": list(self.irreducible)}

    @classmethod
    def from_json(cls, obj: dict) -> "GF":
        return make_field(int(obj["p"]), int(obj["m"]), obj.get("irreducible"))

    # encoding

    def elements(self) -> range:
        return range(self.q)

    def to_coeffs(self, x: int) -> list[int]:
        self.check(x)
        out = []
        for _ in range(self.m):
            x, c = divmod(x, self.p)
            out.append(c)
        return out

    def from_coeffs(self, coeffs: Sequence[int]) -> int:
        if len(coeffs) > self.m:
            raise ValueError("too many coefficients")
        v = 0
        for c in reversed(coeffs):
            v = v * self.p + c % self.p
        return v

    def check(self, x: int) -> int:
        if not 0 <= x < self.q:
            raise ValueError(f"{x} is not an element of {self!r}")
        return x

    # tables

    def _slow_mul(self, x: int, y: int) -> int:
        p, m = self.p, self.m
        if m == 1:
            return x * y % p
        if p == 2:
            r = 0
            while y:
                if y & 1:
                    r ^= x
                y >>= 1
                x <<= 1
                if x >> m:
                    x ^= self._poly_int
            return r
        a = self.to_coeffs(x)
        b = self.to_coeffs(y)
        prod = [0] * (2 * m - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    prod[i + j] = (prod[i + j] + ai * bj) % p
        return self.from_coeffs(_poly_mod(prod, self.irreducible, p)) if any(prod) else 0

    @property
    def _poly_int(self) -> int:
        return sum(c << i for i, c in enumerate(self.irreducible))

    def _slow_add(self, x: int, y: int) -> int:
        if self.p == 2:
            return x ^ y
        if self.m == 1:
            return (x + y) % self.p
        r, mul = 0, 1
        while x or y:
            x, a = divmod(x, self.p)
            y, b = divmod(y, self.p)
            r += ((a + b) % self.p) * mul
            mul *= self.p
        return r

    def _build_tables(self):
        q = self.q
        if q == 2:
            g = 1
        else:
            factors = prime_factors(q - 1)
            g = next(c for c in range(2, q)
                     if all(self._slow_pow(c, (q - 1) // f) != 1 for f in factors))
        exp = [0] * (2 * (q - 1))
        log = [-1] * q
        x = 1
        for i in range(q - 1):
            exp[i] = x
            log[x] = i
            x = self._slow_mul(x, g)
        for i in range(q - 1, 2 * (q - 1)):
            exp[i] = exp[i - (q - 1)]
        # zech[d] = log(1 + g^d), -1 when 1 + g^d == 0
        zech = [-1] * (q - 1)
        for d in range(q - 1):
            s = self._slow_add(1, exp[d])
            zech[d] = log[s] if s else -1
        self.generator = g
        self._exp, self._log, self._zech = exp, log, zech

    def _slow_pow(self, x: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self._slow_mul(r, x)
            x = self._slow_mul(x, x)
            e >>= 1
        return r

    @property
    def has_tables(self) -> bool:
        return self._exp is not None

    def tables(self):
        """(p, q, exp, log, zech) as int64 arrays, for the compiled kernels."""
        if self._tables_np is None:
            if not self.has_tables:
                raise ValueError(f"{self!r} is too large for table arithmetic")
            self._tables_np = (self.p, self.q,
                               np.asarray(self._exp, dtype=np.int64),
                               np.asarray(self._log, dtype=np.int64),
                               np.asarray(self._zech, dtype=np.int64))
        return self._tables_np

    # arithmetic

    def add(self, x: int, y: int) -> int:
        if self.p == 2:
            return x ^ y
        if self.m == 1:
            return (x + y) % self.p
        if self._zech is None:
            return self._slow_add(x, y)
        if x == 0:
            return y
        if y == 0:
            return x
        lx = self._log[x]
        d = self._log[y] - lx
        if d < 0:
            d += self.q - 1
        z = self._zech[d]
        if z < 0:
            return 0
        return self._exp[lx + z]

    def neg(self, x: int) -> int:
        if self.p == 2 or x == 0:
            return x
        if self.m == 1:
            return self.p - x
        if self._log is None:
            return self.from_coeffs([(-c) % self.p for c in self.to_coeffs(x)])
        return self._exp[self._log[x] + (self.q - 1) // 2]

    def sub(self, x: int, y: int) -> int:
        return self.add(x, self.neg(y))

    def mul(self, x: int, y: int) -> int:
        if x == 0 or y == 0:
            return 0
        if self._log is None:
            return self._slow_mul(x, y)
        return self._exp[self._log[x] + self._log[y]]

    def inv(self, x: int) -> int:
        if x == 0:
            raise ZeroDivisionError(f"0 has no inverse in {self!r}")
        if self._log is None:
            return self._slow_pow(x, self.q - 2)
        return self._exp[(self.q - 1 - self._log[x]) % (self.q - 1)]

    def div(self, x: int, y: int) -> int:
        return self.mul(x, self.inv(y))

    def pow(self, x: int, e: int) -> int:
        if e < 0:
            x, e = self.inv(x), -e
        if e == 0:
            return 1
        if x == 0:
            return 0
        if self._log is None:
            return self._slow_pow(x, e)
        return self._exp[self._log[x] * e % (self.q - 1)]

    def sum(self, xs) -> int:
        r = 0
        for x in xs:
            r = self.add(r, x)
        return r

    def random_elements(self, rng, count: int) -> list[int]:
        return [rng.randrange(self.q) for _ in range(count)]

    def __iter__(self) -> Iterator[int]:
        return iter(range(self.q))

    def __len__(self) -> int:
        return self.q


@lru_cache(maxsize=64)
def _cached_field(p: int, m: int, irreducible: tuple[int, ...] | None) -> GF:
    return GF(p, m, irreducible)


def make_field(p: int, m: int = 1, irreducible: Sequence[int] | None = None) -> GF:
    """GF(p^m) with the smallest monic irreducible unless one is given."""
    if not is_prime(p):
        raise ValueError(f"characteristic {p} is not prime")
    if m < 1:
        raise ValueError("extension degree must be >= 1")
    if p ** m > MAX_Q:
        raise ValueError(f"field size {p}^{m} exceeds supported maximum {MAX_Q}")
    key = tuple(int(c) for c in irreducible) if irreducible is not None else None
    return _cached_field(p, m, key)


def field_of_size(q: int) -> GF:
    pm = prime_power(q)
    if pm is None:
        raise ValueError(f"{q} is not a prime power")
    return make_field(*pm)


def smallest_field_geq(b: int) -> GF:
    """GF(q) for the smallest prime power q >= b."""
    if b < 2:
        b = 2
    q = b
    while prime_power(q) is None:
        q += 1
    return field_of_size(q)
