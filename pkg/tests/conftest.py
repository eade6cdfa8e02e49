import pytest

from freenormal.corpus import run_corpus

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def corpus():
    """The seed-42 corpus, analyzed, built and verified once per session."""
    return run_corpus(100, 42, keep=True)


@pytest.fixture
def criterion():
    """Record one PASS/FAIL line for an acceptance criterion."""

    def record(name, ok, detail):
        line = f"{'PASS' if ok else 'FAIL'}  {name}: {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
