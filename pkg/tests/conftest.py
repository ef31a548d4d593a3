import time

import pytest

_results = {}


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("acceptance")
        if mark is not None:
            _results[item.nodeid] = {"number": mark.args[0], "title": mark.args[1], "outcome": None}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_call(item):
    start = time.perf_counter()
    yield
    if item.nodeid in _results:
        _results[item.nodeid]["seconds"] = time.perf_counter() - start


def pytest_runtest_logreport(report):
    entry = _results.get(report.nodeid)
    if entry is None:
        return
    if report.when == "call" or (report.when == "setup" and not report.passed):
        entry["outcome"] = "PASS" if report.passed else ("SKIP" if report.skipped else "FAIL")


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for entry in sorted(_results.values(), key=lambda e: e["number"]):
        outcome = entry["outcome"] or "NOT RUN"
        secs = entry.get("seconds")
        timing = f" ({secs:.1f} s)" if secs is not None else ""
        terminalreporter.write_line(f"{outcome:7s} criterion {entry['number']:2d}: {entry['title']}{timing}")
