import pytest

_ACCEPTANCE_LINES = []


@pytest.fixture
def record_criterion():
    """Record one pass/fail line for the acceptance summary."""

    def record(number, ok, detail):
        status = "PASS" if ok else "FAIL"
        _ACCEPTANCE_LINES.append(f"[{status}] criterion {number}: {detail}")
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def tri():
    """Three-vertex pair with a hand-traced barcode {[1, 1], [1, 2]}."""
    import numpy as np

    a = np.array([[0, 1, 2], [1, 0, 3], [2, 3, 0]], dtype=float)
    b = np.array([[0, 3, 1], [3, 0, 2], [1, 2, 0]], dtype=float)
    return a, b
