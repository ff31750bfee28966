import pytest

from fermiwig.modes import ModeSet


@pytest.fixture(scope="session")
def m2():
    return ModeSet(1, 2)


@pytest.fixture(scope="session")
def m4():
    return ModeSet(2, 2)


# One line per acceptance criterion, collected from tests marked ``criterion``.
_CRITERIA: dict = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or report.when not in ("setup", "call"):
        return
    number, title = marker.args
    entry = _CRITERIA.setdefault(number, {"title": title, "ok": True, "seconds": 0.0})
    entry["seconds"] += report.duration
    if not report.passed:
        entry["ok"] = False


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        e = _CRITERIA[number]
        status = "PASS" if e["ok"] else "FAIL"
        terminalreporter.write_line(f"{status}  {number:2d}. {e['title']}  ({e['seconds']:.1f} s)")
