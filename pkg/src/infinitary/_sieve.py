"""Compiled sieve kernels shared by range factorization and the search engine."""

import numpy as np
from numba import njit

# omega(n) <= 9 for n < 2**31; one spare slot.
MAX_FACTORS = 10

# Bytes of scratch per window element: primes (int32), exponents (int8),
# count (int8) and the running cofactor (int64).
BYTES_PER_ELEMENT = MAX_FACTORS * 4 + MAX_FACTORS + 1 + 8


@njit(cache=True, nogil=True)
def small_primes(bound):
    """All primes p <= bound as an int64 array."""
    if bound < 2:
        return np.empty(0, dtype=np.int64)
    flags = np.ones(bound + 1, dtype=np.bool_)
    flags[0] = False
    flags[1] = False
    i = 2
    while i * i <= bound:
        if flags[i]:
            for j in range(i * i, bound + 1, i):
                flags[j] = False
        i += 1
    return np.nonzero(flags)[0].astype(np.int64)


@njit(cache=True, nogil=True)
def spf_table(size):
    """Smallest-prime-factor table for 0 <= x < size (entries 0, 1 are 0)."""
    spf = np.zeros(size, dtype=np.int32)
    for i in range(2, size):
        if spf[i] == 0:
            spf[i] = i
            if i * i < size:
                for j in range(i * i, size, i):
                    if spf[j] == 0:
                        spf[j] = i
    return spf


@njit(cache=True, nogil=True)
def factor_window(lo, hi, base_primes):
    """Factor every integer in [lo, hi).

    ``base_primes`` must contain every prime up to isqrt(hi - 1). Returns
    ``(count, primes, exps)`` with row ``i`` describing ``lo + i``; primes
    within a row are ascending.
    """
    m = hi - lo
    rem = np.arange(lo, hi).astype(np.int64)
    count = np.zeros(m, dtype=np.int8)
    primes = np.zeros((m, MAX_FACTORS), dtype=np.int32)
    exps = np.zeros((m, MAX_FACTORS), dtype=np.int8)
    for p in base_primes:
        if p * p >= hi:
            break
        start = ((lo + p - 1) // p) * p
        for x in range(start, hi, p):
            i = x - lo
            r = rem[i] // p
            e = 1
            while r % p == 0:
                r //= p
                e += 1
            rem[i] = r
            c = count[i]
            primes[i, c] = p
            exps[i, c] = e
            count[i] = c + 1
    for i in range(m):
        if rem[i] > 1:
            c = count[i]
            primes[i, c] = rem[i]
            exps[i, c] = 1
            count[i] = c + 1
    return count, primes, exps


PACK_SHIFT = 24


@njit(cache=True, nogil=True)
def packed_factor_table(size):
    """Division-free factor lookup for 0 <= x < size (size <= 2**24).

    ``head[x]`` packs the smallest prime p of x and its exponent e as
    ``p | e << 24``; ``rest[x]`` is x / p**e.
    """
    spf = spf_table(size)
    head = np.zeros(size, dtype=np.int32)
    rest = np.ones(size, dtype=np.int32)
    for x in range(2, size):
        p = spf[x]
        u = x // p
        if u > 1 and spf[u] == p:
            head[x] = head[u] + (1 << PACK_SHIFT)
            rest[x] = rest[u]
        else:
            head[x] = p | (1 << PACK_SHIFT)
            rest[x] = u
    return head, rest
