import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from crossedmods import fixtures  # noqa: E402

ACCEPTANCE_LINES: dict[int, str] = {}


@pytest.fixture(scope="session")
def crossed():
    return fixtures.crossed_fixtures()


@pytest.fixture(scope="session")
def two_crossed():
    return fixtures.two_crossed_fixtures()


@pytest.fixture
def acceptance():
    def record(number: int, passed: bool, text: str):
        ACCEPTANCE_LINES[number] = f"criterion {number}: {'PASS' if passed else 'FAIL'}  {text}"
        print(ACCEPTANCE_LINES[number])

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])


SAMPLES = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "samples")
