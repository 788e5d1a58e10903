import numpy as np
import pytest

from lcpso import RngStream, get_objective

_ACCEPTANCE: list[str] = []


@pytest.fixture
def criterion():
    """Record one pass/fail line per acceptance criterion."""
    def record(number, passed: bool | None, detail: str):
        status = "EXCLUDED" if passed is None else ("PASS" if passed else "FAIL")
        _ACCEPTANCE.append(f"criterion {number}: {status}  {detail}")
        return passed
    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE:
            terminalreporter.write_line(line)


@pytest.fixture
def sphere3():
    return get_objective("sphere", 3)


@pytest.fixture
def rng():
    return RngStream(1234)


@pytest.fixture
def np_rng():
    return np.random.default_rng(99)
