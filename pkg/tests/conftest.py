import os

import pytest

FIXTURES = os.path.join(os.path.dirname(__file__), "fixtures")
CORPUS = os.path.join(FIXTURES, "corpus")
MINI = os.path.join(FIXTURES, "mini")

ACCEPTANCE_RESULTS = []


@pytest.fixture
def corpus_dir():
    return CORPUS


@pytest.fixture
def mini_dir():
    return MINI


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(line)
