import math

import pytest

from photon_router_lab import SystemParams


@pytest.fixture
def matched():
    """Both bands centred at zero (overlapping completely)."""
    return SystemParams(xi_a=1, xi_b=1, delta_a=0, delta_b=0, g_a=0.5, g_b=0.5, omega=1)


@pytest.fixture
def separated():
    """Band b lifted clear of band a (channel b closed everywhere in band a)."""
    return SystemParams(xi_a=1, xi_b=1, delta_a=0, delta_b=4.5, g_a=0.5, g_b=0.5, omega=1)


def arccosh_log(x):
    """Independent arccosh for x >= 1."""
    return math.log(x + math.sqrt(x * x - 1))


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def criterion():
    """Record one PASS/FAIL line per acceptance criterion, then assert."""
    def check(number, title, passed, detail):
        line = f"criterion {number:>2} {'PASS' if passed else 'FAIL'}  {title}: {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        assert passed, line
    return check


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda l: int(l.split()[1])):
            terminalreporter.write_line(line)
