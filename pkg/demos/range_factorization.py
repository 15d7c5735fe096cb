"""
Factoring a range with the segmented sieve
==========================================

sieve_factorizations walks a range in fixed-size windows and yields one
Factorization per integer; factorize handles single 64-bit values.
"""

from infinitary import factorize, is_prime, sieve_factorizations

for f in sieve_factorizations(10**9, 10**9 + 8, segment_size=4):
    print(f.value, f)

# %%
# Point factorization uses trial division, Miller-Rabin and Pollard-Brent.

n = 2**62 - 57 * 1000003
print(n, factorize(n), is_prime(2**61 - 1))
