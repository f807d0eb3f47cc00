from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings

from ribbonkit import zoo

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

BRAIDED = [n for n in zoo.NAMES]
MODULAR = [n for n in zoo.NAMES if zoo.builtin(n).expected["modular"]]

# filled in by tests/test_acceptance.py, printed at the end of the session
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


@pytest.fixture(params=zoo.NAMES)
def entry(request):
    return zoo.builtin(request.param)


@pytest.fixture
def fib():
    return zoo.builtin("fibonacci").data


@pytest.fixture
def yang_lee():
    return zoo.builtin("yang_lee").data


@pytest.fixture
def ising():
    return zoo.builtin("ising").data


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, desc = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {desc}")
