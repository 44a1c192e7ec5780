import pytest

from ncann.rings import builtin_ring

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def s4():
    return builtin_ring("section4", 2).pres


@pytest.fixture(scope="session")
def s4p5():
    return builtin_ring("section4", 5).pres


@pytest.fixture(scope="session")
def arm():
    return builtin_ring("armendariz_3_3", 2).pres


@pytest.fixture(scope="session")
def cedo():
    return builtin_ring("cedo_3_1", 2).pres


@pytest.fixture(scope="session")
def cedo3():
    return builtin_ring("cedo_3_1", 3).pres


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
