import numpy as np
import pytest

from stfmm import GrayImage

from golden import TABLE4, TABLE5


@pytest.fixture
def table4():
    return GrayImage.from_rows(TABLE4)


@pytest.fixture
def table5():
    return GrayImage.from_rows(TABLE5)


@pytest.fixture
def rng():
    return np.random.default_rng(20130418)


_ACCEPTANCE = []


@pytest.fixture
def criterion(request):
    """Record one acceptance line; the summary is printed at the end of the run."""

    def record(ok, detail=""):
        _ACCEPTANCE.append((request.node.name, bool(ok), detail))
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in _ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}")
