"""Prints one PASS/FAIL line per acceptance criterion at the end of a run."""

import re

_CRITERION = re.compile(r"test_acceptance\.py::test_(ac\d+)")
_RESULTS: dict[str, tuple[bool, list[str]]] = {}


def pytest_runtest_logreport(report):
    match = _CRITERION.search(report.nodeid)
    if not match or report.skipped or (report.when != "call" and report.passed):
        return
    name = match.group(1).upper()
    detail = dict(report.user_properties).get("detail", "")
    ok, details = _RESULTS.setdefault(name, (True, []))
    if detail:
        details.append(detail)
    _RESULTS[name] = (ok and report.passed, details)


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_RESULTS, key=lambda s: int(s[2:])):
        ok, details = _RESULTS[name]
        terminalreporter.write_line(f"{name} {'PASS' if ok else 'FAIL'}  {' | '.join(details)}".rstrip())
