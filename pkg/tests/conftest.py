import pytest

from p2moduli.exactlin import FieldSpec


@pytest.fixture
def F():
    return FieldSpec.prime(1009)


@pytest.fixture
def Q():
    return FieldSpec.rationals()


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
