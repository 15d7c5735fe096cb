"""Compiled kernels for the infinitary sigma(sigma(n)) = k*n range search.

Every factor ``1 + p**(2**j)`` of sigma_inf(n) is at most n + 1, so the
factorization of m = sigma_inf(n) is assembled from factorizations of those
terms (looked up in a packed factor table, or taken from a sieve window for
the one large prime of n) and sigma_inf(m) is then evaluated modulo n.

Modular products use a float reciprocal to estimate the quotient; with
n < 2**31 every exact product is below 2**62 and the estimate is off by at
most one, which the correction step absorbs.
"""

import numpy as np
from numba import njit

from ._sieve import PACK_SHIFT, factor_window

ACC = 64
_EXP_MASK = (1 << PACK_SHIFT) - 1


@njit(cache=True, nogil=True, inline="always")
def _mulmod(a, b, n, inv):
    q = np.int64(float(a) * float(b) * inv)
    r = a * b - q * n
    while r < 0:
        r += n
    while r >= n:
        r -= n
    return r


@njit(cache=True, nogil=True, inline="always")
def _accumulate(p, e, mq, mf, nm):
    for i in range(nm):
        if mq[i] == p:
            mf[i] += e
            return nm
    mq[nm] = p
    mf[nm] = e
    return nm + 1


@njit(cache=True, nogil=True, inline="always")
def _add_small(t, head, rest, mq, mf, nm):
    while t > 1:
        h = head[t]
        nm = _accumulate(np.int64(h & _EXP_MASK), np.int64(h >> PACK_SHIFT), mq, mf, nm)
        t = rest[t]
    return nm


@njit(cache=True, nogil=True)
def _add_large(t, head, rest, base, mq, mf, nm):
    # trial division until the cofactor drops into the table
    size = head.shape[0]
    for p in base:
        if t < size or p * p > t:
            break
        if t % p == 0:
            e = 0
            while t % p == 0:
                t //= p
                e += 1
            nm = _accumulate(p, e, mq, mf, nm)
    if t >= size:
        return _accumulate(t, 1, mq, mf, nm)
    return _add_small(t, head, rest, mq, mf, nm)


@njit(cache=True, nogil=True, inline="always")
def _add_prime_power(p, e, head, rest, mq, mf, nm):
    # multiply the terms 1 + p**(2**j) of sigma_inf(p**e) into (mq, mf);
    # every term must be inside the table
    x = p
    while e:
        if e & 1:
            nm = _add_small(x + 1, head, rest, mq, mf, nm)
        e >>= 1
        if e:
            x = x * x
    return nm


@njit(cache=True, nogil=True, inline="always")
def _largest_term(p, e):
    x = p
    while e > 1:
        e >>= 1
        x = x * x
    return x + 1


@njit(cache=True, nogil=True)
def _add_any_prime_power(p, e, head, rest, base, mq, mf, nm):
    size = head.shape[0]
    x = p
    while e:
        if e & 1:
            if x + 1 < size:
                nm = _add_small(x + 1, head, rest, mq, mf, nm)
            else:
                nm = _add_large(x + 1, head, rest, base, mq, mf, nm)
        e >>= 1
        if e:
            x = x * x
    return nm


@njit(cache=True, nogil=True)
def _residue(n, mq, mf, nm):
    # sigma_inf(prod mq**mf) mod n
    if n == 1:
        return 0
    inv = 1.0 / n
    r = 1
    for i in range(nm):
        x = mq[i]
        if x >= n:
            x %= n
        f = mf[i]
        while f:
            if f & 1:
                y = x + 1
                if y == n:
                    return 0
                r = _mulmod(r, y, n, inv)
            f >>= 1
            if f:
                x = _mulmod(x, x, n, inv)
        if r == 0:
            return 0
    return r


@njit(cache=True, nogil=True)
def smooth_window(lo, hi, bound, head, rest, base):
    """Hits n in [lo, hi) whose largest prime factor is at most ``bound``."""
    count, primes, exps = factor_window(lo, hi, base)
    size = head.shape[0]
    mq = np.zeros(ACC, dtype=np.int64)
    mf = np.zeros(ACC, dtype=np.int64)
    hits = np.zeros(hi - lo, dtype=np.bool_)
    for i in range(hi - lo):
        c = count[i]
        if c > 0 and primes[i, c - 1] > bound:
            continue
        fits = True
        for j in range(c):
            if _largest_term(np.int64(primes[i, j]), np.int64(exps[i, j])) >= size:
                fits = False
        nm = 0
        for j in range(c):
            if fits:
                nm = _add_prime_power(np.int64(primes[i, j]), np.int64(exps[i, j]),
                                      head, rest, mq, mf, nm)
            else:
                nm = _add_any_prime_power(np.int64(primes[i, j]), np.int64(exps[i, j]),
                                          head, rest, base, mq, mf, nm)
        if _residue(lo + i, mq, mf, nm) == 0:
            hits[i] = True
    return np.nonzero(hits)[0].astype(np.int64) + lo


@njit(cache=True, nogil=True)
def large_prime_window(lo, hi, limit, head, rest, base):
    """Hits n = s*P <= limit for primes P in [lo, hi).

    Requires lo * lo > limit, so every cofactor s lies below P and inside
    the factor table.
    """
    # row i is lo + i; row i + 1 holds the factorization of P + 1
    count, primes, exps = factor_window(lo, hi + 1, base)
    mq = np.zeros(ACC, dtype=np.int64)
    mf = np.zeros(ACC, dtype=np.int64)
    out = []
    for i in range(hi - lo):
        if count[i] != 1 or exps[i, 0] != 1:
            continue
        P = np.int64(lo + i)
        for s in range(1, limit // P + 1):
            nm = 0
            t = s
            while t > 1:
                h = head[t]
                nm = _add_prime_power(np.int64(h & _EXP_MASK), np.int64(h >> PACK_SHIFT),
                                      head, rest, mq, mf, nm)
                t = rest[t]
            for j in range(count[i + 1]):
                nm = _accumulate(np.int64(primes[i + 1, j]), np.int64(exps[i + 1, j]), mq, mf, nm)
            n = s * P
            if _residue(n, mq, mf, nm) == 0:
                out.append(n)
    res = np.empty(len(out), dtype=np.int64)
    for i in range(len(out)):
        res[i] = out[i]
    return res
