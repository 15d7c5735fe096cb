"""Acceptance checks, one criterion marker each.

The full-range searches take minutes; the summary at the end of the run
prints one PASS/FAIL line per criterion.
"""

import csv
import io
import time

import pytest

from infinitary import factorize
from infinitary.cli import main
from infinitary.divisors import (BIUNITARY, INFINITARY, KINDS, UNITARY, DivisorKind,
                                 divisors, filter_divisors, kary_divisors, sigma,
                                 sigma_by_enumeration)
from infinitary.lemmas import run_lemma
from infinitary.search import SearchConfig, find_perfect, find_superperfect, search_multiples

from table1 import MISPRINTED, ROWS

CI_SUBSET = [1, 2, 8, 9, 10, 15, 18, 24, 30, 60, 720, 1020, 4080, 8925, 14688, 14976, 16728,
             17850, 35700, 36720, 37440, 66912, 71400, 285600, 308448, 381888, 428400, 602208,
             636480, 763776, 856800, 1321920, 1505520, 3011040, 3084480]


def cli_csv(*argv):
    out = io.StringIO()
    code = main(["search", *argv, "--format", "csv"], out=out)
    assert code == 0
    return out.getvalue()


def parse(text):
    return [(int(r["n"]), int(r["k"]), r["factorization"]) for r in csv.DictReader(io.StringIO(text))]


def printed_value(fact):
    v = 1
    for t in fact.split("*") if fact else []:
        p, _, e = t.partition("^")
        v *= int(p) ** int(e or 1)
    return v


@pytest.fixture(scope="module")
def csv_2_28():
    return {w: cli_csv("--limit", "2^28", "--inner", "infinitary", "--outer", "infinitary",
                       "--threads", str(w))
            for w in (1, 4)}


@pytest.fixture(scope="module")
def rows_2_28(csv_2_28):
    return parse(csv_2_28[1])


# -- criterion 1 ---------------------------------------------------------------

@pytest.mark.slow
@pytest.mark.criterion(1)
def test_full_table_at_2_28(rows_2_28):
    found = [(n, k) for n, k, _ in rows_2_28]
    assert len(found) == 52, f"{len(found)} hits up to 2^28"
    assert found == [(n, k) for n, k, _ in ROWS]


@pytest.mark.slow
@pytest.mark.criterion(1)
def test_factorizations_at_2_28(rows_2_28):
    printed = {n: f for n, _, f in ROWS}
    for n, _, fact in rows_2_28:
        assert str(factorize(n)) == fact
        if n not in MISPRINTED:
            assert fact == printed[n]
    got = dict((n, f) for n, _, f in rows_2_28)
    assert got[1321920] == "2^6*3^5*5*17"


@pytest.mark.criterion(1)
def test_misprinted_rows_are_exactly_the_inconsistent_ones():
    assert {n for n, _, f in ROWS if printed_value(f) != n} == MISPRINTED
    assert 1321920 in MISPRINTED


@pytest.mark.criterion(1)
def test_ci_subset_at_2_22():
    t = time.perf_counter()
    hits = search_multiples(SearchConfig(1 << 22))
    elapsed = time.perf_counter() - t
    assert [h.n for h in hits] == CI_SUBSET
    assert [(h.n, h.k) for h in hits] == [(n, k) for n, k, _ in ROWS if n <= 1 << 22]
    assert elapsed < 30, f"{elapsed:.1f} s"


@pytest.mark.slow
@pytest.mark.criterion(1)
def test_full_table_at_2_29():
    found = [(h.n, h.k) for h in search_multiples(SearchConfig(1 << 29))]
    assert found == [(n, k) for n, k, _ in ROWS]


# -- criterion 2 ---------------------------------------------------------------

@pytest.mark.slow
@pytest.mark.criterion(2)
def test_infinitary_superperfect_at_2_28(rows_2_28):
    assert [n for n, k, _ in rows_2_28 if k == 2] == [2, 9]


@pytest.mark.criterion(2)
def test_infinitary_superperfect_small():
    assert find_superperfect(1 << 20) == [2, 9]


# -- criterion 3 ---------------------------------------------------------------

@pytest.mark.criterion(3)
def test_unitary_superperfect():
    assert find_superperfect(10**4, UNITARY)[:4] == [2, 9, 165, 238]


# -- criterion 4 ---------------------------------------------------------------

@pytest.mark.criterion(4)
def test_unitary_perfect():
    assert find_perfect(10**5, UNITARY) == [6, 60, 90, 87360]


@pytest.mark.criterion(4)
def test_biunitary_perfect():
    assert find_perfect(10**5, BIUNITARY) == [6, 60, 90]


@pytest.mark.criterion(4)
def test_infinitary_perfect_not_divisible_by_8():
    hits = find_perfect(10**5, INFINITARY)
    assert hits
    assert {n for n in hits if n % 8} <= {6, 60, 90}


# -- criterion 5 ---------------------------------------------------------------

LIMIT = 10**5


@pytest.fixture(scope="module")
def divisor_lists():
    ds = [[] for _ in range(LIMIT + 1)]
    for d in range(1, LIMIT + 1):
        for m in range(d, LIMIT + 1, d):
            ds[m].append(d)
    return ds


@pytest.mark.criterion(5)
@pytest.mark.parametrize("kind", KINDS, ids=str)
def test_oracle_equivalence(kind, divisor_lists):
    bad = [n for n in range(1, LIMIT + 1)
           if sigma(kind, n) != sigma_by_enumeration(kind, n, divisor_lists[n])]
    assert bad == []


@pytest.mark.criterion(5)
@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_kary_stabilizes(p):
    for e in range(0, 9):
        n = p**e
        target = divisors(INFINITARY, n)
        for k in range(max(e - 1, 0), e + 3):
            assert kary_divisors(n, k) == target, (p, e, k)
            assert filter_divisors(DivisorKind.kary(k), n, divisors(KINDS[0], n)) == target


# -- criterion 6 ---------------------------------------------------------------

@pytest.fixture(scope="module")
def reports():
    return {lid: r for lid in ("L1", "L2", "L3", "L4", "L5", "L6") for r in run_lemma(lid)}


@pytest.mark.criterion(6)
@pytest.mark.parametrize("lemma_id", ["L1", "L2", "L3", "L5", "L6"])
def test_lemma_passes(reports, lemma_id):
    r = reports[lemma_id]
    assert r.witnesses and r.violations == []


@pytest.mark.criterion(6)
def test_parity_range(reports):
    assert reports["L1"].range_description.endswith(str(10**6))


@pytest.mark.criterion(6)
def test_known_diophantine_witnesses(reports):
    assert (7, 5, 1, 2) in reports["L5"].witnesses
    assert (3, 5, 1) in reports["L6"].witnesses


@pytest.mark.criterion(6)
def test_distinct_factor_discrepancy_is_surfaced(reports):
    r = reports["L4"]
    assert not r.passed
    assert any(v[:2] == (3, 3) for v in r.violations)
    assert (3, 3, 2, 2) in r.witnesses
    assert r.notes["violation_count"] == len(r.violations)


# -- criterion 7 ---------------------------------------------------------------

@pytest.mark.slow
@pytest.mark.criterion(7)
def test_byte_identical_across_workers(csv_2_28):
    assert csv_2_28[1] == csv_2_28[4]
