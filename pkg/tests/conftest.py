import pytest

# criterion number -> (title, outcome); filled by tests marked ``criterion``
_RESULTS: dict[int, list] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): an acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    n, title = mark.args
    entry = _RESULTS.setdefault(n, [title, True, False])
    if rep.when == "call":
        entry[2] = True
    if rep.failed:
        entry[1] = False


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_RESULTS):
        title, ok, ran = _RESULTS[n]
        status = "PASS" if ok and ran else ("FAIL" if ran or not ok else "NOT RUN")
        terminalreporter.write_line(f"criterion {n}: {status}  {title}")
