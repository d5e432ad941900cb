import pytest

# nodeid -> (criterion number, name, passed, details)
_CRITERIA: dict[str, tuple[int, str, bool, list[str]]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, name): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        details = [str(v) for k, v in item.user_properties if k == "detail"]
        _CRITERIA[item.nodeid] = (mark.args[0], mark.args[1], rep.passed, details)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    merged: dict[int, list] = {}
    for number, name, passed, details in _CRITERIA.values():
        entry = merged.setdefault(number, [name, True, []])
        entry[1] = entry[1] and passed
        entry[2].extend(details)
    terminalreporter.section("acceptance criteria")
    for number in sorted(merged):
        name, passed, details = merged[number]
        verdict = "PASS" if passed else "FAIL"
        extra = f"  ({'; '.join(details)})" if details else ""
        terminalreporter.write_line(f"criterion {number} {name}: {verdict}{extra}")
