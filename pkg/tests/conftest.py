import pytest

from wreathwalk.groups import make_cyclic, make_symmetric

# (group factory, n) pairs small enough for exact convolution
EXACT_CASES = [
    (make_cyclic, 2, 2), (make_cyclic, 2, 3), (make_cyclic, 2, 4), (make_cyclic, 2, 5),
    (make_cyclic, 3, 2), (make_cyclic, 3, 3), (make_cyclic, 3, 4),
    (make_symmetric, 3, 2), (make_symmetric, 3, 3),
]


def exact_cases():
    return [pytest.param(f(m), n, id=f"{f(m).name}-n{n}") for f, m, n in EXACT_CASES]


_criteria = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args
    if report.when == "call" or report.failed:
        status = _criteria.get(number, (title, "PASS"))[1]
        if report.failed:
            status = "FAIL"
        _criteria[number] = (title, status)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        title, status = _criteria[number]
        terminalreporter.write_line(f"{status} criterion {number:>2}: {title}")
