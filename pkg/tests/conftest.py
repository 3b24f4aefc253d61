"""Collects the acceptance-criterion outcomes and prints one line per criterion."""

import re

_CRITERIA = {}


def pytest_runtest_logreport(report):
    m = re.search(r"test_acceptance\.py::test_criterion_(\d+)_", report.nodeid)
    if not m or (report.when != "call" and report.passed):
        return
    n = int(m.group(1))
    ok = report.passed and _CRITERIA.get(n, True)
    _CRITERIA[n] = ok


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if _CRITERIA[n] else 'FAIL'}")
