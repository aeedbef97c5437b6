from __future__ import annotations

from importlib import resources

import pytest

from divide_forge.divide_model import parse_divide

ACCEPTANCE_LINES: list[str] = []


def data_text(name: str) -> str:
    return resources.files("divide_forge").joinpath("data", name).read_text()


def load(name: str):
    return parse_divide(data_text(name))


@pytest.fixture
def unknot():
    return load("unknot.div")


@pytest.fixture
def alpha():
    return load("alpha_even.div")


@pytest.fixture
def circle():
    return load("circle.div")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
