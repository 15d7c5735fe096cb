"""Divisor kinds and their divisor sums.

The infinitary test rests on binary exponents: ``p**f`` is an infinitary
divisor of ``p**e`` exactly when the set bits of ``f`` are a subset of the
set bits of ``e``. Everything here is exact integer arithmetic.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from .arith import Factorization, check_domain, factorize

ORACLE_LIMIT = 10**7


@dataclass(frozen=True)
class BitExpansion:
    exponent: int
    bits: frozenset[int]

    @classmethod
    def of(cls, exponent: int) -> BitExpansion:
        if exponent < 0:
            raise ValueError("exponent must be >= 0")
        return cls(exponent, frozenset(j for j in range(exponent.bit_length()) if exponent >> j & 1))

    @property
    def ones_count(self) -> int:
        return len(self.bits)

    def __le__(self, other: BitExpansion) -> bool:
        return self.bits <= other.bits


def ones(e: int) -> int:
    """Number of ones in the binary expansion of e."""
    return bin(e).count("1")


@dataclass(frozen=True)
class DivisorKind:
    """``name`` is one of ordinary, unitary, biunitary, infinitary, kary."""

    name: str
    k: int | None = None

    def __post_init__(self):
        if self.name not in _KIND_NAMES:
            raise ValueError(f"unknown divisor kind {self.name!r}")
        if (self.name == "kary") != (self.k is not None):
            raise ValueError("k is required for, and only for, k-ary kinds")
        if self.k is not None and self.k < 0:
            raise ValueError("k must be >= 0")

    @classmethod
    def kary(cls, k: int) -> DivisorKind:
        return cls("kary", k)

    @classmethod
    def parse(cls, text: str) -> DivisorKind:
        """Accepts e.g. ``infinitary``, ``unitary``, ``3-ary``, ``kary:3``."""
        text = text.strip().lower()
        if text in _ALIASES:
            return _ALIASES[text]
        m = re.fullmatch(r"(\d+)-ary|k-?ary[:=](\d+)", text)
        if m:
            return cls.kary(int(m.group(1) or m.group(2)))
        raise ValueError(f"unknown divisor kind {text!r}")

    def __str__(self):
        return f"{self.k}-ary" if self.name == "kary" else self.name


_KIND_NAMES = {"ordinary", "unitary", "biunitary", "infinitary", "kary"}
ORDINARY = DivisorKind("ordinary")
UNITARY = DivisorKind("unitary")
BIUNITARY = DivisorKind("biunitary")
INFINITARY = DivisorKind("infinitary")
KINDS = (ORDINARY, UNITARY, BIUNITARY, INFINITARY)
_ALIASES = {
    "ordinary": ORDINARY, "sigma": ORDINARY,
    "unitary": UNITARY, "biunitary": BIUNITARY,
    "infinitary": INFINITARY, "inf": INFINITARY,
}


def _as_factorization(n) -> Factorization:
    return n if isinstance(n, Factorization) else factorize(n)


# -- infinitary ---------------------------------------------------------------

def is_infinitary_divisor(d: int, n: int) -> bool:
    if d < 1 or n < 1 or n % d:
        return False
    for p, e in factorize(n):
        f = 0
        while d % p == 0:
            d //= p
            f += 1
        if f & ~e:
            return False
    return True


def infinitary_terms(p: int, e: int) -> list[int]:
    """The factors ``1 + p**(2**j)``, j over the set bits of e."""
    return [1 + p ** (1 << j) for j in sorted(BitExpansion.of(e).bits)]


# -- k-ary hierarchy (oracle) ---------------------------------------------------

@lru_cache(maxsize=None)
def kary_exponents(e: int, k: int) -> frozenset[int]:
    """Exponents f with p**f a k-ary divisor of p**e (independent of p).

    Direct recursion on k: p**f is (k+1)-ary iff p**f and p**(e-f) share no
    k-ary divisor other than 1.
    """
    level = [frozenset(range(x + 1)) for x in range(e + 1)]
    for _ in range(k):
        nxt = [frozenset(f for f in range(x + 1) if level[f] & level[x - f] == {0})
               for x in range(e + 1)]
        if nxt == level:
            # the step map is deterministic, so a fixed point persists
            break
        level = nxt
    return level[e]


def _check_oracle_bound(n: int):
    if not 1 <= n <= ORACLE_LIMIT:
        raise ValueError(f"n={n} is outside the divisor-enumeration bound [1, {ORACLE_LIMIT}]")


def kary_divisors(n: int, k: int) -> list[int]:
    _check_oracle_bound(n)
    if k < 0:
        raise ValueError("k must be >= 0")
    per_prime = [[p**f for f in sorted(kary_exponents(e, k))] for p, e in factorize(n)]
    return sorted(math.prod(c) for c in product(*per_prime))


def all_divisors(n: int) -> list[int]:
    _check_oracle_bound(n)
    small = [d for d in range(1, math.isqrt(n) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def filter_divisors(kind: DivisorKind, n: int, ds: list[int]) -> list[int]:
    """Keep the members of ``ds`` (all divisors of n, ascending) of the given kind.

    Each kind is tested from its definition: unitary by gcd(d, n/d) = 1,
    biunitary by the unitary divisors of d and n/d meeting only in 1,
    infinitary by the bit-subset test, k-ary by the recursive hierarchy.
    """
    if kind == ORDINARY:
        return list(ds)
    if kind == UNITARY:
        return [d for d in ds if math.gcd(d, n // d) == 1]
    if kind == BIUNITARY:
        def unitary(x):
            return {u for u in ds if u <= x and x % u == 0 and math.gcd(u, x // u) == 1}
        return [d for d in ds if unitary(d) & unitary(n // d) == {1}]
    if kind == INFINITARY:
        f = factorize(n)
        out = []
        for d in ds:
            ok = True
            for p, e in f:
                x, g = d, 0
                while x % p == 0:
                    x //= p
                    g += 1
                if g & ~e:
                    ok = False
                    break
            if ok:
                out.append(d)
        return out
    keep = set(kary_divisors(n, kind.k))
    return [d for d in ds if d in keep]


def divisors(kind: DivisorKind, n: int) -> list[int]:
    """Divisors of n of the given kind, ascending."""
    return filter_divisors(kind, n, all_divisors(n))


# -- divisor sums -------------------------------------------------------------

def sigma_prime_power(kind: DivisorKind, p: int, e: int) -> int:
    if kind == ORDINARY:
        return (p ** (e + 1) - 1) // (p - 1)
    if kind == UNITARY:
        return 1 + p**e
    if kind == BIUNITARY:
        s = (p ** (e + 1) - 1) // (p - 1)
        return s - p ** (e // 2) if e % 2 == 0 else s
    if kind == INFINITARY:
        return math.prod(infinitary_terms(p, e))
    return sum(p**f for f in kary_exponents(e, kind.k))


def sigma(kind: DivisorKind, n) -> int:
    """Sum of divisors of the given kind; ``n`` is an int or a Factorization.

    Raises ValueDomainError if the result leaves the 64-bit domain.
    """
    f = _as_factorization(n)
    total = 1
    for p, e in f:
        total = check_domain(total * sigma_prime_power(kind, p, e))
    return total


def sigma_by_enumeration(kind: DivisorKind, n: int, ds: list[int] | None = None) -> int:
    """Sum of the enumerated divisor set; ``ds`` may supply all divisors of n."""
    if ds is None:
        return sum(divisors(kind, n))
    _check_oracle_bound(n)
    return sum(filter_divisors(kind, n, ds))


def two_adic_lower_bound(f) -> int:
    """Sum of ones(e) over odd prime powers p**e; v2(sigma_inf(n)) is at least this."""
    return sum(ones(e) for p, e in _as_factorization(f) if p != 2)


def v2(n: int) -> int:
    return (n & -n).bit_length() - 1
