import pytest

from _fixtures import BLASCHKE
from modelspace.model_space import extract_basis

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def bases():
    return {name: extract_basis(spec) for name, spec in BLASCHKE.items()}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
