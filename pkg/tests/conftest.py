import pytest

_criteria: dict[int, list[str]] = {}


def pytest_runtest_logreport(report):
    number = getattr(report, "criterion", None)
    if number is None:
        return
    outcomes = _criteria.setdefault(number, [])
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        outcomes.append(report.outcome)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    marker = item.get_closest_marker("criterion")
    if marker is not None:
        outcome.get_result().criterion = marker.args[0]


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        outcomes = _criteria[number]
        ok = bool(outcomes) and all(o == "passed" for o in outcomes)
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}")
