import pytest

_results: dict[int, list[str]] = {}
_TITLES: dict[int, str] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion number")


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark:
            num, title = mark.args
            _TITLES[num] = title
            _results.setdefault(num, [])


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark and (rep.when == "call" or rep.outcome != "passed"):
        _results[mark.args[0]].append(rep.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_results):
        outs = _results[num]
        ok = outs and all(o == "passed" for o in outs)
        status = "PASS" if ok else ("NOT RUN" if not outs else "FAIL")
        terminalreporter.write_line(f"criterion {num:>2} [{status}] {_TITLES[num]}")
