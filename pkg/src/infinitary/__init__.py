"""Infinitary divisor sums, the sigma_inf(sigma_inf(n)) = k*n range search and
brute-force checks of the supporting lemmas."""

from .arith import (Factorization, ValueDomainError, factorize, is_prime,
                    sieve_factorizations, trial_factorize)
from .divisors import (BIUNITARY, INFINITARY, KINDS, ORDINARY, UNITARY, BitExpansion,
                       DivisorKind, divisors, is_infinitary_divisor, kary_divisors,
                       sigma, sigma_by_enumeration, two_adic_lower_bound)
from .search import (SearchConfig, SearchHit, find_perfect, find_superperfect,
                     search_multiples)

__version__ = "0.1.0"
