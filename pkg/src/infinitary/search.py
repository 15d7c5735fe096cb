"""Exhaustive search for n dividing outer(inner(n)).

The infinitary/infinitary case runs on compiled kernels over independent
segments; every other kind pair uses a reference path that sieves n,
evaluates the inner sum exactly and point-factors it. Either way each hit is
re-derived in exact arithmetic before it is returned.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

import numpy as np

from . import _kernels, _sieve
from .arith import (SIEVE_CEILING, Factorization, ValueDomainError, base_primes,
                    factorize, memory_budget, segment_length, sieve_factorizations)
from .divisors import INFINITARY, DivisorKind, sigma

# Primes above this bound are handled as the cofactor of n = s*P.
LARGE_PRIME_BOUND = 1 << 18
MAX_SEGMENT = 1 << 18
ENGINES = ("auto", "compiled", "reference")

Progress = Callable[[int, int], None]


@dataclass(frozen=True)
class SearchConfig:
    limit: int
    inner_kind: DivisorKind = INFINITARY
    outer_kind: DivisorKind = INFINITARY
    segment_size: int | None = None
    worker_count: int = 1
    k_filter: int | None = None
    engine: str = "auto"

    def __post_init__(self):
        if not 1 <= self.limit <= SIEVE_CEILING:
            raise ValueError(f"limit must be in [1, {SIEVE_CEILING}], got {self.limit}")
        if self.segment_size is not None and self.segment_size < 1:
            raise ValueError("segment_size must be >= 1")
        if self.worker_count < 1:
            raise ValueError("worker_count must be >= 1")
        if self.engine not in ENGINES:
            raise ValueError(f"engine must be one of {ENGINES}")

    @property
    def compiled(self) -> bool:
        both_inf = self.inner_kind == INFINITARY and self.outer_kind == INFINITARY
        if self.engine == "compiled" and not both_inf:
            raise ValueError("the compiled engine only handles infinitary/infinitary")
        return both_inf and self.engine != "reference"


@dataclass(frozen=True)
class SearchHit:
    n: int
    k: int
    n_factorization: Factorization = field(repr=False)
    inner_value: int
    outer_value: int

    def as_row(self) -> tuple:
        return (self.n, self.k, str(self.n_factorization), self.inner_value, self.outer_value)


@lru_cache(maxsize=1 << 16)
def _factor_inner(m: int) -> Factorization:
    return factorize(m)


def make_hit(n: int, inner_kind=INFINITARY, outer_kind=INFINITARY) -> SearchHit | None:
    """Exact evaluation of one candidate; None when n does not divide outer(inner(n))."""
    f = factorize(n)
    inner = sigma(inner_kind, f)
    outer = sigma(outer_kind, _factor_inner(inner))
    k, r = divmod(outer, n)
    if r:
        return None
    return SearchHit(n, k, f, inner, outer)


def _segments(lo: int, hi: int, step: int):
    return [(a, min(a + step, hi)) for a in range(lo, hi, step)]


def _run(tasks, workers: int, progress: Progress | None) -> list:
    results = []
    if workers == 1:
        for i, task in enumerate(tasks):
            results.append(task())
            if progress:
                progress(i + 1, len(tasks))
        return results
    with ThreadPoolExecutor(max_workers=workers) as pool:
        for i, res in enumerate(pool.map(lambda t: t(), tasks)):
            results.append(res)
            if progress:
                progress(i + 1, len(tasks))
    return results


def _compiled_candidates(cfg: SearchConfig, progress: Progress | None) -> list[int]:
    limit = cfg.limit
    bound = min(limit, max(LARGE_PRIME_BOUND, math.isqrt(limit) + 1))
    head, rest = _sieve.packed_factor_table(bound + 2)
    base = base_primes(limit + 2)
    step = cfg.segment_size or _default_segment(cfg.worker_count, head.nbytes + rest.nbytes)

    def smooth(a, b):
        return lambda: _kernels.smooth_window(a, b, bound, head, rest, base)

    def large(a, b):
        return lambda: _kernels.large_prime_window(a, b, limit, head, rest, base)

    tasks = [smooth(a, b) for a, b in _segments(1, limit + 1, step)]
    tasks += [large(a, b) for a, b in _segments(bound + 1, limit + 1, step)]
    found = np.concatenate(_run(tasks, cfg.worker_count, progress))
    return sorted(int(n) for n in found)


def _default_segment(workers: int, reserved: int) -> int:
    per_worker = segment_length(max(memory_budget() - reserved, 1 << 20), workers)
    return max(1024, min(MAX_SEGMENT, per_worker))


def _reference_segment(a: int, b: int, cfg: SearchConfig) -> list[SearchHit]:
    hits = []
    for f in sieve_factorizations(a, b, segment_size=b - a):
        inner = sigma(cfg.inner_kind, f)
        outer = sigma(cfg.outer_kind, _factor_inner(inner))
        k, r = divmod(outer, f.value)
        if r == 0:
            hits.append(SearchHit(f.value, k, f, inner, outer))
    return hits


def search_multiples(cfg: SearchConfig, progress: Progress | None = None) -> list[SearchHit]:
    """All n <= cfg.limit with n | outer(inner(n)), ascending.

    Output does not depend on worker_count or segment_size. Values leaving
    the 64-bit domain raise ValueDomainError rather than being skipped.
    """
    if cfg.compiled:
        hits = []
        for n in _compiled_candidates(cfg, progress):
            hit = make_hit(n)
            if hit is None:
                raise AssertionError(f"compiled kernel reported {n}, exact check disagrees")
            hits.append(hit)
    else:
        step = cfg.segment_size or min(MAX_SEGMENT, 1 << 14)
        tasks = [(lambda a=a, b=b: _reference_segment(a, b, cfg))
                 for a, b in _segments(1, cfg.limit + 1, step)]
        hits = [h for chunk in _run(tasks, cfg.worker_count, progress) for h in chunk]
        hits.sort(key=lambda h: h.n)
    if cfg.k_filter is not None:
        hits = [h for h in hits if h.k == cfg.k_filter]
    return hits


def find_superperfect(limit: int, kind: DivisorKind = INFINITARY, **kwargs) -> list[int]:
    """n <= limit with sigma_kind(sigma_kind(n)) = 2n."""
    cfg = SearchConfig(limit, kind, kind, k_filter=2, **kwargs)
    return [h.n for h in search_multiples(cfg)]


def find_perfect(limit: int, kind: DivisorKind = INFINITARY) -> list[int]:
    """n <= limit with sigma_kind(n) = 2n."""
    if not 1 <= limit <= SIEVE_CEILING:
        raise ValueError(f"limit must be in [1, {SIEVE_CEILING}]")
    return [f.value for f in sieve_factorizations(1, limit + 1) if sigma(kind, f) == 2 * f.value]


__all__ = [
    "SearchConfig", "SearchHit", "search_multiples", "find_superperfect",
    "find_perfect", "make_hit", "ValueDomainError",
]
