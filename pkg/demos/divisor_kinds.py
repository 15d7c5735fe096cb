"""
Divisor kinds side by side
==========================

Ordinary, unitary, biunitary and infinitary divisors of a few numbers,
and the k-ary hierarchy settling onto the infinitary set.
"""

from infinitary import BIUNITARY, INFINITARY, ORDINARY, UNITARY, DivisorKind, divisors, sigma
from infinitary.divisors import BitExpansion, infinitary_terms, kary_divisors

for n in (12, 16, 60, 72):
    print(n)
    for kind in (ORDINARY, UNITARY, BIUNITARY, INFINITARY):
        print(f"  {str(kind):<11} {divisors(kind, n)}  sum={sigma(kind, n)}")

# %%
# An infinitary divisor p**f of p**e is one whose exponent bits are a
# subset of the bits of e. For 2**11 the bits are {0, 1, 3}.

print(BitExpansion.of(11).bits)
print(divisors(INFINITARY, 2**11))
print(infinitary_terms(2, 11), sigma(INFINITARY, 2**11))

# %%
# The k-ary divisors of p**e stop changing once k >= e - 1.

n = 3**6
for k in range(7):
    print(k, kary_divisors(n, k))
print("infinitary", divisors(INFINITARY, n))
print(DivisorKind.parse("2-ary"), sigma(DivisorKind.kary(2), n))
