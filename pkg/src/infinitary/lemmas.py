"""Brute-force checks of the structural facts behind the sigma_inf results.

Each verifier scans a bounded range, records the tuples that satisfy the
hypothesis (``witnesses``) and every tuple where the conclusion fails
(``violations``). Violations are collected exhaustively, never raised.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

from .arith import FACTOR_LIMIT, factorize, is_prime, sieve_factorizations
from .divisors import INFINITARY, ones, sigma, sigma_prime_power, two_adic_lower_bound, v2

LEMMA_IDS = ("L1", "L2", "L3", "L4", "L5", "L6", "CP")

DEFAULTS = {
    "limit": 10**6,
    "p_max": 10**4,
    "e_max": 10,
    "l_max": 5,
    "q_max": 10**6,
    "k_max": 4,
    "m_max": 32,
}


@dataclass
class LemmaReport:
    lemma_id: str
    range_description: str
    witnesses: list[tuple] = field(default_factory=list)
    violations: list[tuple] = field(default_factory=list)
    elapsed: float = 0.0
    notes: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_dict(self, timing: bool = False) -> dict:
        d = {
            "lemma_id": self.lemma_id,
            "range": self.range_description,
            "passed": self.passed,
            "witness_count": len(self.witnesses),
            "witnesses": [list(w) for w in self.witnesses],
            "violations": [list(v) for v in self.violations],
            "notes": self.notes,
        }
        if timing:
            d["elapsed"] = round(self.elapsed, 3)
        return d


@dataclass(frozen=True)
class DiophantineSolution:
    """p**(2**k) + 1 == 2 * q**m."""

    p: int
    q: int
    k: int
    m: int

    def __post_init__(self):
        if self.p ** (1 << self.k) + 1 != 2 * self.q**self.m:
            raise ValueError(f"{self} does not satisfy p^(2^k) + 1 = 2 q^m")

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.p, self.q, self.k, self.m)


def _timed(fn):
    def wrapper(*args, **kwargs):
        t0 = time.perf_counter()
        result = fn(*args, **kwargs)
        items = result if isinstance(result, tuple) else (result,)
        for item in items:
            for report in item if isinstance(item, list) else (item,):
                if isinstance(report, LemmaReport):
                    report.elapsed = time.perf_counter() - t0
        return result
    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


def _map(fn: Callable, chunks: list, workers: int) -> list:
    # chunk results are merged in chunk order, so output is worker-independent
    if workers <= 1 or len(chunks) <= 1:
        return [fn(*c) for c in chunks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, *zip(*chunks)))


def _split(lo: int, hi: int, parts: int) -> list[tuple[int, int]]:
    step = max(1, -(-(hi - lo) // max(parts, 1)))
    return [(a, min(a + step, hi)) for a in range(lo, hi, step)]


def _primes_upto(bound: int) -> list[int]:
    if bound < 2:
        return []
    return [f.value for f in sieve_factorizations(2, bound + 1) if f.pairs == ((f.value, 1),)]


@lru_cache(maxsize=None)
def _term_primes(p: int, j: int) -> tuple[int, ...] | None:
    """Distinct primes of p**(2**j) + 1, or None outside the factoring domain."""
    t = p ** (1 << j) + 1
    if t >= FACTOR_LIMIT:
        return None
    return tuple(q for q, _ in factorize(t))


def _sigma_inf_primes(p: int, e: int) -> set[int] | None:
    # distinct primes of sigma_inf(p**e) as the union over its factors
    out: set[int] = set()
    j = 0
    while e >> j:
        if e >> j & 1:
            ps = _term_primes(p, j)
            if ps is None:
                return None
            out.update(ps)
        j += 1
    return out


# -- L1: parity and 2-adic valuation --------------------------------------------

def _parity_chunk(lo: int, hi: int):
    witnesses, violations = [], []
    for f in sieve_factorizations(lo, hi):
        n = f.value
        s = sigma(INFINITARY, f)
        power_of_two = n & (n - 1) == 0
        if s % 2 == 1:
            witnesses.append((n, s))
        if (s % 2 == 1) != power_of_two:
            violations.append((n, s, "parity"))
        bound = two_adic_lower_bound(f)
        if v2(s) < bound or bound < f.omega - 1:
            violations.append((n, s, "valuation", v2(s), bound, f.omega))
    return witnesses, violations


@_timed
def verify_parity(limit: int = DEFAULTS["limit"], workers: int = 1) -> LemmaReport:
    """sigma_inf(n) is odd iff n is a power of 2, and
    v2(sigma_inf(n)) >= sum of ones(e) over odd p**e || n >= omega(n) - 1."""
    if not 1 <= limit <= 10**7:
        raise ValueError("limit must be in [1, 10**7]")
    report = LemmaReport("L1", f"1 <= n <= {limit}")
    for w, v in _map(_parity_chunk, _split(1, limit + 1, workers), workers):
        report.witnesses += w
        report.violations += v
    return report


# -- L2: prime factors of p^(2^l) + 1 are 1 mod 4 -----------------------------

def _one_mod_four_chunk(primes: list[int], l_max: int):
    witnesses, violations, skipped = [], [], 0
    for p in primes:
        for l in range(1, l_max + 1):
            ps = _term_primes(p, l)
            if ps is None:
                skipped += 1
                continue
            t = p ** (1 << l) + 1
            bad = [q for q in ps if q != 2 and q % 4 != 1]
            if p != 2 and t % 4 != 2:
                violations.append((p, l, t, "not 2 mod 4"))
            if p == 2 and 2 in ps:
                bad.append(2)
            if bad:
                violations.append((p, l, t, "factors", tuple(bad)))
            witnesses.append((p, l, t))
    return witnesses, violations, skipped


@_timed
def verify_one_mod_four(limit: int = DEFAULTS["p_max"], l_max: int = DEFAULTS["l_max"],
                        workers: int = 1) -> LemmaReport:
    """For l >= 1: every prime factor of 2^(2^l)+1 is 1 mod 4; for odd p,
    p^(2^l)+1 is 2 mod 4 and its odd prime factors are 1 mod 4."""
    primes = _primes_upto(limit)
    chunks = [(primes[i::max(workers, 1)], l_max) for i in range(max(workers, 1))]
    report = LemmaReport("L2", f"primes p <= {limit}, 1 <= l <= {l_max}, p^(2^l)+1 < 2^63")
    skipped = 0
    for w, v, s in _map(_one_mod_four_chunk, chunks, workers):
        report.witnesses += w
        report.violations += v
        skipped += s
    report.witnesses.sort()
    report.violations.sort()
    report.notes["skipped_out_of_domain"] = skipped
    return report


# -- L3 / L4: sigma_inf of prime powers ----------------------------------------

def _is_mersenne(p: int) -> bool:
    return p & (p + 1) == 0


def _is_fermat_prime(x: int) -> bool:
    a = (x - 1).bit_length() - 1
    return x == (1 << a) + 1 and a > 0 and a & (a - 1) == 0 and is_prime(x)


def _prime_power_chunk(primes: list[int], e_max: int):
    w3, v3, w4, v4, skipped = [], [], [], [], 0
    for p in primes:
        for e in range(1, e_max + 1):
            ps = _sigma_inf_primes(p, e)
            if ps is None:
                skipped += 1
                continue
            s = sigma_prime_power(INFINITARY, p, e)
            omega = len(ps)
            if omega == 1:
                w3.append((p, e, s))
                if not (_is_mersenne(p) and e == 1) and not (p == 2 and e & (e - 1) == 0 and _is_fermat_prime(s)):
                    v3.append((p, e, s))
            bound = ones(e) if p == 2 else ones(e) + 1
            w4.append((p, e, ones(e), omega))
            if omega < bound:
                v4.append((p, e, ones(e), omega, bound))
    return w3, v3, w4, v4, skipped


@lru_cache(maxsize=8)
def _prime_power_scan(p_max: int, e_max: int, workers: int):
    primes = _primes_upto(p_max)
    chunks = [(primes[i::max(workers, 1)], e_max) for i in range(max(workers, 1))]
    parts = _map(_prime_power_chunk, chunks, workers)
    merged = [sorted(x for part in parts for x in part[i]) for i in range(4)]
    return (*merged, sum(part[4] for part in parts))


@_timed
def verify_prime_power_classification(p_max: int = DEFAULTS["p_max"], e_max: int = DEFAULTS["e_max"],
                                      workers: int = 1) -> LemmaReport:
    """If sigma_inf(p^e) is a prime power then p is a Mersenne prime and
    e = 1, or p = 2, e = 2^l and sigma_inf(p^e) is a Fermat prime."""
    w3, v3, _, _, skipped = _prime_power_scan(p_max, e_max, workers)
    report = LemmaReport("L3", f"primes p <= {p_max}, 1 <= e <= {e_max}", list(w3), list(v3))
    report.notes["skipped_out_of_domain"] = skipped
    return report


@_timed
def verify_distinct_factors(p_max: int = DEFAULTS["p_max"], e_max: int = DEFAULTS["e_max"],
                            workers: int = 1) -> LemmaReport:
    """omega(sigma_inf(2^e)) >= ones(e); omega(sigma_inf(p^e)) >= ones(e) + 1 for odd p.

    Witnesses carry the empirical counts ``(p, e, ones(e), omega)``; the
    stated bound is checked as written and every shortfall is reported.
    """
    _, _, w4, v4, skipped = _prime_power_scan(p_max, e_max, workers)
    report = LemmaReport("L4", f"primes p <= {p_max}, 1 <= e <= {e_max}", list(w4), list(v4))
    odd = [(omega - l, p, e) for p, e, l, omega in w4 if p != 2]
    report.notes["skipped_out_of_domain"] = skipped
    report.notes["violation_count"] = len(v4)
    if odd:
        margin, p, e = min(odd)
        report.notes["min_omega_minus_ones_odd_p"] = margin
        report.notes["first_min_margin_case"] = [p, e]
    report.notes["violating_primes"] = sorted({v[0] for v in v4})
    return report


# -- L5 / L6: p^(2^k) + 1 = 2 q^m ----------------------------------------------

def iroot(y: int, m: int) -> int:
    """floor(y ** (1/m)) in exact integer arithmetic."""
    if y < 2 or m == 1:
        return y
    x = 1 << -(-y.bit_length() // m)
    while True:
        z = ((m - 1) * x + y // x ** (m - 1)) // m
        if z >= x:
            return x
        x = z


def _diophantine_chunk(primes: list[int], q_max: int, k_max: int, m_max: int):
    out = []
    for p in primes:
        for k in range(k_max + 1):
            t = p ** (1 << k) + 1
            if t % 2:
                continue
            y = t // 2
            for m in range(1, m_max + 1):
                if q_max**m < y:
                    continue
                q = iroot(y, m)
                if q < 2:
                    break
                if q**m == y and is_prime(q):
                    out.append(DiophantineSolution(p, q, k, m))
    return out


def _is_power_of_two(x: int) -> bool:
    return x > 0 and x & (x - 1) == 0


@_timed
def search_diophantine(p_max: int = DEFAULTS["p_max"], q_max: int = DEFAULTS["q_max"],
                       k_max: int = DEFAULTS["k_max"], m_max: int = DEFAULTS["m_max"],
                       workers: int = 1):
    """All prime solutions of p^(2^k) + 1 = 2 q^m inside the bounds.

    Returns ``(solutions, [L5 report, L6 report])``. L5: for k = 1 and
    m >= 2, m is a power of 2 and unique per q; for k > 1, m = 1. L6: the
    only solution with m = 1, k > 0 and 2^(2^(k+1)) = 1 (mod q) is
    (p, q, k) = (3, 5, 1).
    """
    primes = [p for p in _primes_upto(p_max) if p > 2]
    chunks = [(primes[i::max(workers, 1)], q_max, k_max, m_max) for i in range(max(workers, 1))]
    solutions = sorted((s for part in _map(_diophantine_chunk, chunks, workers) for s in part),
                       key=DiophantineSolution.as_tuple)
    bounds = f"odd primes p <= {p_max}, primes q <= {q_max}, 0 <= k <= {k_max}, 1 <= m <= {m_max}"
    l5 = LemmaReport("L5", bounds)
    l6 = LemmaReport("L6", bounds)
    by_q: dict[int, set[int]] = {}
    for s in solutions:
        if s.k == 1 and s.m >= 2:
            l5.witnesses.append(s.as_tuple())
            by_q.setdefault(s.q, set()).add(s.m)
            if not _is_power_of_two(s.m):
                l5.violations.append((*s.as_tuple(), "m not a power of 2"))
        elif s.k > 1:
            l5.witnesses.append(s.as_tuple())
            if s.m != 1:
                l5.violations.append((*s.as_tuple(), "k > 1 with m != 1"))
        if s.m == 1 and s.k > 0 and pow(2, 1 << (s.k + 1), s.q) == 1:
            l6.witnesses.append((s.p, s.q, s.k))
            if (s.p, s.q, s.k) != (3, 5, 1):
                l6.violations.append((s.p, s.q, s.k))
    for q, ms in sorted(by_q.items()):
        if len(ms) > 1:
            l5.violations.append((q, tuple(sorted(ms)), "several m for one q"))
    l5.notes["solutions"] = len(solutions)
    return solutions, [l5, l6]


# -- proof checkpoints --------------------------------------------------------

def _checkpoints(e_max: int) -> list[tuple[str, bool]]:
    s = lambda n: sigma(INFINITARY, n)  # noqa: E731
    checks = [
        ("sigma_inf(9) = 10", s(9) == 10),
        ("sigma_inf(10) = 2*9", s(10) == 18),
        ("sigma_inf(2) = 3, sigma_inf(3) = 2*2", s(2) == 3 and s(3) == 4),
        ("sigma_inf(3^e) = 2q with q = 2*3^(e-1) - 1 only at e = 2",
         [e for e in range(1, 64)
          if sigma_prime_power(INFINITARY, 3, e) == 2 * (2 * 3 ** (e - 1) - 1)] == [2]),
        ("sigma_inf(N) = 12 forces N = 10, but sigma_inf(10) = 18", s(12) == 20 and s(10) == 18),
        ("sigma_inf(N) = 24 forces N = 30 > 24", s(24) == 60 and 60 // 2 > 24),
        ("q = 2^(2^m - 1) + 1 is prime only for m = 1 (m <= 5)",
         [m for m in range(1, 6) if is_prime(2 ** ((1 << m) - 1) + 1)] == [1]),
        ("7^2 + 1 = 2*5^2", 7**2 + 1 == 2 * 5**2),
        ("sigma_inf(5^2) = 2*13 is prime to 7", s(25) == 26 and 26 % 7 != 0),
        (f"7 divides no sigma_inf(2^f), f <= {e_max}",
         all(math.prod(pow(2, 1 << j, 7) + 1 for j in range(f.bit_length()) if f >> j & 1) % 7
             for f in range(1, e_max + 1))),
        ("3^2 + 1 = 2*5 and 2^4 = 1 (mod 5)", 3**2 + 1 == 10 and pow(2, 4, 5) == 1),
    ]
    return checks


@_timed
def verify_checkpoints(e_max: int = 1 << 12) -> LemmaReport:
    """Numeric facts used along the odd-case argument (9 is the odd solution)."""
    report = LemmaReport("CP", f"fixed checkpoints, f <= {e_max}")
    for name, ok in _checkpoints(e_max):
        (report.witnesses if ok else report.violations).append((name,))
    return report


# -- dispatch / replay ----------------------------------------------------------

def run_lemma(lemma_id: str, bound: int | None = None, workers: int = 1, **bounds) -> list[LemmaReport]:
    """Run one verifier; ``bound`` overrides its primary range."""
    b = {**DEFAULTS, **{k: v for k, v in bounds.items() if v is not None}}
    lemma_id = lemma_id.upper()
    if lemma_id == "L1":
        return [verify_parity(bound or b["limit"], workers=workers)]
    if lemma_id == "L2":
        return [verify_one_mod_four(bound or b["p_max"], b["l_max"], workers=workers)]
    if lemma_id == "L3":
        return [verify_prime_power_classification(bound or b["p_max"], b["e_max"], workers=workers)]
    if lemma_id == "L4":
        return [verify_distinct_factors(bound or b["p_max"], b["e_max"], workers=workers)]
    if lemma_id in ("L5", "L6"):
        _, reports = search_diophantine(bound or b["p_max"], b["q_max"], b["k_max"], b["m_max"], workers=workers)
        return [r for r in reports if r.lemma_id == lemma_id]
    if lemma_id == "CP":
        return [verify_checkpoints()]
    raise ValueError(f"unknown lemma id {lemma_id!r}; expected one of {', '.join(LEMMA_IDS)}")


def replay_witness(lemma_id: str, w: tuple) -> bool:
    """Re-evaluate the conclusion for one witness from scratch."""
    if lemma_id == "L1":
        n, s = w
        return s == sigma(INFINITARY, n) and s % 2 == 1 and n & (n - 1) == 0
    if lemma_id == "L2":
        p, l, t = w
        f = factorize(t)
        return t == p ** (1 << l) + 1 and (p == 2 or t % 4 == 2) and all(q == 2 or q % 4 == 1 for q, _ in f) \
            and (p != 2 or f.exponent(2) == 0)
    if lemma_id == "L3":
        p, e, s = w
        return s == sigma_prime_power(INFINITARY, p, e) and factorize(s).omega == 1 and (
            (_is_mersenne(p) and e == 1) or (p == 2 and _is_power_of_two(e) and _is_fermat_prime(s)))
    if lemma_id == "L4":
        p, e, l, omega = w
        return l == ones(e) and omega == len(_sigma_inf_primes(p, e))
    if lemma_id == "L5":
        s = DiophantineSolution(*w)
        return (s.k == 1 and _is_power_of_two(s.m)) or (s.k > 1 and s.m == 1)
    if lemma_id == "L6":
        p, q, k = w
        return p ** (1 << k) + 1 == 2 * q and (p, q, k) == (3, 5, 1)
    if lemma_id == "CP":
        return dict(_checkpoints(1 << 12)).get(w[0], False)
    raise ValueError(lemma_id)
