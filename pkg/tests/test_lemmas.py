import json

import pytest

from infinitary.divisors import INFINITARY, sigma
from infinitary.lemmas import (LEMMA_IDS, DiophantineSolution, iroot, replay_witness, run_lemma,
                               search_diophantine, verify_checkpoints, verify_distinct_factors,
                               verify_one_mod_four, verify_parity,
                               verify_prime_power_classification)


def test_parity_small():
    r = verify_parity(1000)
    assert r.passed
    assert [n for n, _ in r.witnesses] == [1, 2, 4, 8, 16, 32, 64, 128, 256, 512]
    assert (16, 17) in r.witnesses
    assert sigma(INFINITARY, 9) == 10


def test_parity_workers_agree():
    a = verify_parity(20000)
    b = verify_parity(20000, workers=3)
    assert (a.witnesses, a.violations) == (b.witnesses, b.violations)


def test_one_mod_four():
    r = verify_one_mod_four(200, l_max=5)
    assert r.passed
    assert (2, 2, 17) in r.witnesses
    assert (3, 1, 10) in r.witnesses
    assert (2, 5, 2**32 + 1) in r.witnesses
    assert all(l >= 1 for _, l, _ in r.witnesses)


def test_prime_power_classification():
    r = verify_prime_power_classification(10**4, 10)
    assert r.passed
    assert (3, 1, 4) in r.witnesses
    assert (2, 4, 17) in r.witnesses
    assert not any(w[:2] == (3, 2) for w in r.witnesses)
    assert {w[0] for w in r.witnesses} == {2, 3, 7, 31, 127, 8191}


def test_distinct_factors_surfaces_the_small_mersenne_cases():
    r = verify_distinct_factors(1000, 10)
    assert (3, 3, 2, 2) in r.witnesses       # sigma_inf(27) = 40 = 2^3 * 5
    assert (3, 3, 2, 2, 3) in r.violations    # stated bound l(e) + 1 = 3
    assert (2, 5, 2, 2) in r.witnesses        # sigma_inf(32) = 51 = 3 * 17
    assert (5, 1, 1, 2) in r.witnesses        # 6 = 2 * 3
    assert not r.passed
    assert r.notes["violation_count"] == len(r.violations)
    # even p obeys its bound throughout the scanned range
    assert all(v[0] != 2 for v in r.violations)


def test_diophantine_scan():
    sols, (l5, l6) = search_diophantine(10**4, 10**6, 4, 32)
    assert l5.passed and l6.passed
    assert (7, 5, 1, 2) in l5.witnesses
    assert (239, 13, 1, 4) in l5.witnesses
    assert l6.witnesses == [(3, 5, 1)]
    assert DiophantineSolution(3, 5, 1, 1) in sols
    assert not any(s.k == 2 and s.m == 2 for s in sols)
    for s in sols:
        assert s.p ** (2**s.k) + 1 == 2 * s.q**s.m


def test_diophantine_solution_validates():
    with pytest.raises(ValueError):
        DiophantineSolution(5, 5, 1, 1)


@pytest.mark.parametrize("y, m", [(0, 3), (1, 5), (10**40, 5), (2**64 - 1, 2), (3**50, 50), (3**50 - 1, 50)])
def test_iroot(y, m):
    r = iroot(y, m)
    assert r**m <= y < (r + 1) ** m


def test_checkpoints():
    r = verify_checkpoints()
    assert r.passed and len(r.witnesses) == 11


@pytest.mark.parametrize("lemma_id", LEMMA_IDS)
def test_witness_replay(lemma_id):
    small = {"L1": 5000, "L2": 300, "L3": 300, "L4": 300, "L5": 1000, "L6": 1000, "CP": None}
    for report in run_lemma(lemma_id, small[lemma_id]):
        assert report.witnesses
        assert all(replay_witness(lemma_id, w) for w in report.witnesses)


def test_reports_are_replayable_and_serializable():
    a = run_lemma("L5", 2000)[0]
    b = run_lemma("L5", 2000)[0]
    assert json.dumps(a.to_dict()) == json.dumps(b.to_dict())
    assert "elapsed" in a.to_dict(timing=True)


def test_unknown_lemma():
    with pytest.raises(ValueError):
        run_lemma("L9")
