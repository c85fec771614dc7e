import pytest

from homotopy_algebra import samples
from homotopy_algebra.transfer import TransferProblem, transfer


@pytest.fixture(scope="session")
def massey():
    return samples.massey_dga(5)


@pytest.fixture(scope="session")
def massey_transfer(massey):
    return transfer(TransferProblem(massey, None, 5))


_criteria: dict[int, bool] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    k = mark.args[0]
    if rep.when == "call" or rep.failed:
        _criteria[k] = _criteria.get(k, True) and rep.passed


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(_criteria):
        terminalreporter.write_line(f"criterion {k}: {'PASS' if _criteria[k] else 'FAIL'}")
