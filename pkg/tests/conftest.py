import numpy as np
import pytest

from genheis import HeisenbergGroup, PairingSpace

_ACCEPTANCE_LINES = []


def record_criterion(number: int, title: str, ok: bool, detail: str = "") -> None:
    status = "PASS" if ok else "FAIL"
    _ACCEPTANCE_LINES.append((number, f"criterion {number:>2} {status}: {title}" + (f" ({detail})" if detail else "")))


@pytest.fixture
def record():
    return record_criterion


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for _, line in sorted(_ACCEPTANCE_LINES):
        terminalreporter.write_line(line)


@pytest.fixture
def q1():
    """H(Q^1) with the product pairing."""
    return HeisenbergGroup(PairingSpace.ell(2, 1))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
