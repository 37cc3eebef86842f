"""Shared pytest wiring: a per-criterion summary for the acceptance suite."""

import re

ACCEPTANCE_PATTERN = re.compile(r"test_acceptance\.py::(test_criterion_\d+\w*)")
_results: dict[str, str] = {}


def pytest_runtest_logreport(report):
    match = ACCEPTANCE_PATTERN.search(report.nodeid)
    if not match:
        return
    name = match.group(1)
    if report.when == "call":
        _results[name] = report.outcome
    elif report.when == "setup" and report.outcome != "passed":
        _results[name] = report.outcome  # errors and skips surface too


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_results):
        outcome = _results[name]
        status = {"passed": "PASS", "failed": "FAIL"}.get(outcome, outcome.upper())
        label = name.removeprefix("test_criterion_").replace("_", " ")
        terminalreporter.write_line(f"[{status}] criterion {label}")
