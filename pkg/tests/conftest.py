import pytest
from helpers import make_h1, make_h2

from kopt_pls.reduction import build_reduction, complete_instance

_ACCEPTANCE = {}


@pytest.fixture(scope="session")
def h1():
    return make_h1()


@pytest.fixture(scope="session")
def h2():
    return make_h2()


@pytest.fixture(scope="session")
def art1(h1):
    return build_reduction(h1, 3)


@pytest.fixture(scope="session")
def art2(h2):
    return build_reduction(h2, 7)


@pytest.fixture(scope="session")
def inst1(art1):
    return complete_instance(art1)


@pytest.fixture(scope="session")
def inst2(art2):
    return complete_instance(art2)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number = marker.args[0]
    if rep.when == "call" or rep.failed:
        prev = _ACCEPTANCE.get(number, "PASS")
        _ACCEPTANCE[number] = "FAIL" if (rep.failed or prev == "FAIL") else "PASS"


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        terminalreporter.write_line(f"criterion {number:2d}: {_ACCEPTANCE[number]}")
