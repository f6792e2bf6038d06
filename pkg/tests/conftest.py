import pytest

_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title, budget): acceptance criterion with a runtime budget")


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("criterion")
    if marker is None or call.when != "call":
        return
    number, title, budget = marker.args
    ok = call.excinfo is None
    _criteria[number] = (ok, title, call.duration, budget)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        ok, title, duration, budget = _criteria[number]
        terminalreporter.write_line(
            f"{'PASS' if ok else 'FAIL'} criterion {number:2d}: {title} "
            f"[tolerance: exact equality; {duration:.1f}s of {budget}s]")
