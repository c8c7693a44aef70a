"""Prints one PASS/FAIL line per acceptance criterion after the run."""
import re

_results = {}


def pytest_runtest_logreport(report):
    match = re.search(r"test_acceptance\.py::test_c(\d+)_(\w+)", report.nodeid)
    if not match:
        return
    key = int(match.group(1))
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        detail = dict(report.user_properties).get("detail", "")
        _results[key] = (report.outcome, match.group(2), detail)


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_results):
        outcome, name, detail = _results[key]
        verdict = "PASS" if outcome == "passed" else "FAIL"
        line = f"criterion {key:2d} {verdict}  {name.replace('_', ' ')}"
        terminalreporter.write_line(f"{line}  [{detail}]" if detail else line)
