import pytest

# (criterion number, line) pairs filled in by tests/test_acceptance.py
ACCEPTANCE_LINES = []


@pytest.fixture
def report_criterion():
    def record(number: int, title: str, failures: list) -> None:
        status = "PASS" if not failures else "FAIL"
        line = f"criterion {number} {status}: {title}"
        if failures:
            line += f" [{len(failures)} failure(s); first: {failures[0]}]"
        ACCEPTANCE_LINES.append((number, line))
        print(line)
        assert not failures, line

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
