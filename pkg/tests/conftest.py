import pytest

_criteria: dict[int, tuple[str, str, float]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args
    # a failure in any phase sticks; the call phase carries the duration
    if report.failed or report.when == "call" or number not in _criteria:
        if number in _criteria and _criteria[number][1] == "FAIL":
            return
        status = "FAIL" if report.failed else ("PASS" if report.when == "call" else "SKIP")
        _criteria[number] = (title, status, report.duration)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        title, status, duration = _criteria[number]
        terminalreporter.write_line(f"criterion {number:2d} {status}: {title} ({duration:.2f}s)")
