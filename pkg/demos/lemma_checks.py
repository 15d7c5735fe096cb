"""
Brute-force checks of the structural lemmas
===========================================

Each verifier returns a LemmaReport with witnesses and violations. L4 is
expected to report violations: for Mersenne p and odd e the bound on the
number of distinct primes is exceeded, starting with sigma_inf(27) = 40.
"""

from infinitary.lemmas import LEMMA_IDS, run_lemma

small = {"L1": 10**5, "L2": 1000, "L3": 1000, "L4": 1000, "L5": 1000, "L6": 1000, "CP": None}
for lemma_id in LEMMA_IDS:
    for r in run_lemma(lemma_id, small[lemma_id]):
        status = "PASS" if r.passed else "VIOLATION"
        print(f"{r.lemma_id:<3} {status:<9} {r.range_description}  witnesses={len(r.witnesses)}")
        for v in r.violations[:3]:
            print("    ", v)
