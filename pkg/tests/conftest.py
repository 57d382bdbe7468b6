import numpy as np
import pytest

from bhdimer.fock import KVector


def random_block(rng, k):
    return KVector(k, rng.normal(size=k + 1) + 1j * rng.normal(size=k + 1))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


ACCEPTANCE_LINES = []


@pytest.fixture
def criterion():
    """Record one acceptance line: ``criterion(n, label, measured, tol)`` asserts measured <= tol."""

    def record(n, label, measured, tol):
        ok = bool(measured <= tol)
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {n}: {label}: measured {measured:.3e} (tolerance {tol:.0e})"
        ACCEPTANCE_LINES.append(line)
        print(line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
