"""Exact integer arithmetic: primality, point factorization and range sieving."""

from __future__ import annotations

import math
import os
import random
from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

from . import _sieve

VALUE_LIMIT = 1 << 64          # value domain of divisor sums
FACTOR_LIMIT = 1 << 63         # point factorization domain
SIEVE_CEILING = 1 << 31        # range sieve / search ceiling
DEFAULT_MEMORY_BUDGET = 64 << 20
MEMORY_ENV = "INFINITARY_MEMORY_MB"

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_TRIAL_BOUND = 1000
_TRIAL_PRIMES = tuple(int(p) for p in _sieve.small_primes(_TRIAL_BOUND))


class ValueDomainError(OverflowError):
    """A value left the exact 64-bit domain the library guarantees."""


def check_domain(value: int, limit: int = VALUE_LIMIT) -> int:
    if value >= limit:
        raise ValueDomainError(f"{value} exceeds the value domain bound {limit}")
    return value


def memory_budget() -> int:
    """Per-process scratch budget in bytes, overridable via the environment."""
    raw = os.environ.get(MEMORY_ENV)
    if raw:
        return int(raw) << 20
    return DEFAULT_MEMORY_BUDGET


@dataclass(frozen=True)
class Factorization:
    """Canonical prime factorization ``value = prod(p**e for p, e in pairs)``."""

    pairs: tuple[tuple[int, int], ...]
    value: int

    def __post_init__(self):
        prev = 1
        prod = 1
        for p, e in self.pairs:
            if p <= prev or e < 1:
                raise ValueError(f"non-canonical factorization {self.pairs}")
            prev = p
            prod *= p**e
        if prod != self.value:
            raise ValueError(f"{self.pairs} does not multiply to {self.value}")

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, int]]) -> Factorization:
        pairs = tuple(sorted((int(p), int(e)) for p, e in pairs))
        return cls(pairs, math.prod(p**e for p, e in pairs))

    @property
    def omega(self) -> int:
        return len(self.pairs)

    def exponent(self, p: int) -> int:
        for q, e in self.pairs:
            if q == p:
                return e
        return 0

    def __iter__(self):
        return iter(self.pairs)

    def __len__(self):
        return len(self.pairs)

    def __str__(self):
        """``p^e*q*...`` with ``^1`` elided; empty for 1."""
        return "*".join(f"{p}^{e}" if e > 1 else str(p) for p, e in self.pairs)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin; the base set is proven for n < 3.3e24."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = (d & -d).bit_length() - 1
    d >>= s
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _brent(n: int, rng: random.Random) -> int:
    # Pollard-Brent; returns a nontrivial factor of the odd composite n.
    while True:
        y = rng.randrange(1, n)
        c = rng.randrange(1, n)
        m = 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r <<= 1
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


def factorize(n: int) -> Factorization:
    """Factor ``1 <= n < 2**63``; every emitted prime is certified by is_prime."""
    n = int(n)
    if n < 1:
        raise ValueError("factorize requires n >= 1")
    check_domain(n, FACTOR_LIMIT)
    counts: dict[int, int] = {}
    for p in _TRIAL_PRIMES:
        if p * p > n:
            break
        while n % p == 0:
            counts[p] = counts.get(p, 0) + 1
            n //= p
    stack = [n] if n > 1 else []
    rng = random.Random(n)
    while stack:
        m = stack.pop()
        if m < _TRIAL_BOUND * _TRIAL_BOUND or is_prime(m):
            # no factor below the trial bound remains, so small m is prime
            if not is_prime(m):
                raise AssertionError(f"uncertified leaf {m}")
            counts[m] = counts.get(m, 0) + 1
            continue
        r = math.isqrt(m)
        if r * r == m:
            stack += [r, r]
            continue
        d = _brent(m, rng)
        stack += [d, m // d]
    return Factorization(tuple(sorted(counts.items())), math.prod(p**e for p, e in counts.items()))


def trial_factorize(n: int) -> Factorization:
    """Plain trial division; slow, used as an independent oracle."""
    pairs = []
    d = 2
    while d * d <= n:
        e = 0
        while n % d == 0:
            n //= d
            e += 1
        if e:
            pairs.append((d, e))
        d += 1
    if n > 1:
        pairs.append((n, 1))
    return Factorization.from_pairs(pairs)


def base_primes(hi: int) -> np.ndarray:
    """Primes up to isqrt(hi) as needed to sieve any window below ``hi``."""
    return _sieve.small_primes(math.isqrt(max(hi, 1)) + 1)


def segment_length(budget: int | None = None, workers: int = 1) -> int:
    budget = memory_budget() if budget is None else budget
    return max(1, budget // (workers * _sieve.BYTES_PER_ELEMENT))


def _rows(lo, count, primes, exps) -> Iterator[Factorization]:
    for i in range(len(count)):
        c = int(count[i])
        pairs = tuple((int(primes[i, j]), int(exps[i, j])) for j in range(c))
        yield Factorization(pairs, lo + i)


def sieve_factorizations(lo: int, hi: int, segment_size: int | None = None,
                         ceiling: int = SIEVE_CEILING) -> Iterator[Factorization]:
    """Yield ``factorize(n)`` for every n in [lo, hi) via a segmented sieve.

    Segments are sized from the memory budget unless ``segment_size`` is
    given; no full-range array is ever allocated.
    """
    if not 1 <= lo < hi:
        raise ValueError(f"need 1 <= lo < hi, got [{lo}, {hi})")
    if hi - 1 > ceiling:
        raise ValueDomainError(f"range end {hi - 1} exceeds sieve ceiling {ceiling}")
    step = segment_size or min(segment_length(), 1 << 16)
    primes = base_primes(hi)
    for a in range(lo, hi, step):
        b = min(a + step, hi)
        yield from _rows(a, *_sieve.factor_window(a, b, primes))
