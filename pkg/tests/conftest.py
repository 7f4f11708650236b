import pytest

from linkcalc.corpus import CORPUS

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)


@pytest.fixture
def acceptance_log():
    return ACCEPTANCE_LINES


@pytest.fixture(params=list(CORPUS))
def corpus_entry(request):
    return CORPUS[request.param]
