"""Shared fixtures and the acceptance-criterion summary.

Acceptance tests are named test_c<digit>_...; after the run a one-line
PASS/FAIL verdict is printed per criterion, aggregating its sub-tests.
"""

import re
from collections import defaultdict

_CRITERION = re.compile(r"test_c(\d+)[a-z]?_")
_results: dict[str, list[tuple[str, bool]]] = defaultdict(list)


def pytest_runtest_logreport(report):
    if report.when != "call":
        return
    m = _CRITERION.search(report.nodeid)
    if m and "test_acceptance" in report.nodeid:
        _results[m.group(1)].append((report.nodeid, report.passed))


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    tw = terminalreporter
    tw.section("acceptance criteria")
    for num in sorted(_results, key=int):
        entries = _results[num]
        ok = all(passed for _, passed in entries)
        verdict = "PASS" if ok else "FAIL"
        tw.write_line(
            f"criterion {num}: {verdict} "
            f"({sum(p for _, p in entries)}/{len(entries)} sub-checks)"
        )
        if not ok:
            for nodeid, passed in entries:
                if not passed:
                    tw.write_line(f"    failed: {nodeid.split('::')[-1]}")
