"""Shared pytest wiring: one visible verdict line per acceptance criterion."""

import re

_CRITERION = re.compile(r"test_acceptance\.py::.*test_criterion_(\d+)_(\w+)")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    match = _CRITERION.search(report.nodeid)
    if match is None:
        return
    number, slug = match.groups()
    verdict = report.outcome.upper().replace("PASSED", "PASS").replace("FAILED", "FAIL")
    title = slug.replace("_", " ")
    print(f"\n[ACCEPTANCE] criterion {number} ({title}): {verdict}")
