"""
Searching for n dividing sigma_inf(sigma_inf(n))
================================================

The compiled engine scans [1, limit] and every hit is re-checked exactly.
Raise LIMIT to 2**28 for the full table (a minute or two per 2**28).
"""

import time

from infinitary import SearchConfig, UNITARY, find_superperfect, search_multiples

LIMIT = 1 << 22

t = time.perf_counter()
hits = search_multiples(SearchConfig(LIMIT))
print(f"{len(hits)} hits up to {LIMIT} in {time.perf_counter() - t:.1f} s")
for h in hits:
    print(f"{h.n:>10}  k={h.k:<3} {h.n_factorization}")

# %%
# Only 2 and 9 have k = 2. The unitary analogue has more.

print([h.n for h in hits if h.k == 2])
print(find_superperfect(10**4, UNITARY))
