from collections import defaultdict

import pytest

_outcomes = defaultdict(list)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion the test belongs to")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is not None and (report.when == "call" or report.outcome != "passed"):
        _outcomes[marker.args[0]].append((item.name, report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for crit in sorted(_outcomes):
        results = _outcomes[crit]
        failed = [name for name, outcome in results if outcome != "passed"]
        status = "FAIL" if failed else "PASS"
        line = f"criterion {crit}: {status} ({len(results) - len(failed)}/{len(results)} tests)"
        if failed:
            line += " failing: " + ", ".join(failed)
        terminalreporter.write_line(line)
