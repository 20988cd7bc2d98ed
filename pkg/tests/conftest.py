import numpy as np
import pytest

from leafshape import _kernels


@pytest.fixture(params=sorted(_kernels.AVAILABLE))
def backend(request, monkeypatch):
    """Run the test once per available kernel backend."""
    module = _kernels.AVAILABLE[request.param]
    monkeypatch.setattr(_kernels, "_impl", module)
    return module


@pytest.fixture
def rng():
    return np.random.default_rng(12345)



_CRITERIA = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        detail = dict(item.user_properties).get("detail", "")
        status = "PASS" if rep.passed else "SKIP" if rep.skipped else "FAIL"
        _CRITERIA[item.nodeid] = (status, marker.args[0], detail)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for status, name, detail in _CRITERIA.values():
        line = f"{status}  {name}"
        terminalreporter.write_line(f"{line}  [{detail}]" if detail else line)
