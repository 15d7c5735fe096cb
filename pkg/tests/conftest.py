import pytest

CRITERIA = {
    1: "table reproduction (52 hits at 2^28, 2^22 subset)",
    2: "infinitary superperfect k=2 at 2^28 is {2, 9}",
    3: "unitary superperfect begins 2, 9, 165, 238",
    4: "perfect-number cross-checks at 10^5",
    5: "oracle equivalence n <= 10^5, k-ary stabilization",
    6: "lemma suites",
    7: "byte-identical output for 1 and 4 workers",
}

_outcomes: dict[int, list[tuple[str, str]]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number n")


def pytest_collection_modifyitems(items):
    for item in items:
        marker = item.get_closest_marker("criterion")
        if marker is not None:
            item.user_properties.append(("criterion", marker.args[0]))


def pytest_runtest_logreport(report):
    crit = dict(report.user_properties).get("criterion")
    if crit is None:
        return
    if report.when == "call" or report.outcome != "passed":
        _outcomes.setdefault(crit, []).append((report.nodeid.split("::")[-1], report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for crit in sorted(CRITERIA):
        results = _outcomes.get(crit)
        if not results:
            tr.write_line(f"criterion {crit}: NOT RUN  {CRITERIA[crit]}")
            continue
        failed = [name for name, outcome in results if outcome != "passed"]
        status = "FAIL" if failed else "PASS"
        line = f"criterion {crit}: {status}  {CRITERIA[crit]}  ({len(results) - len(failed)}/{len(results)} checks)"
        if failed:
            line += "  failing: " + ", ".join(failed)
        tr.write_line(line)
