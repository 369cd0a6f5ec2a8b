import pytest

_LINES = []


@pytest.fixture
def report():
    """Record one PASS/FAIL line per acceptance criterion; printed in the terminal summary."""

    def emit(name, ok, detail=""):
        line = f"{'PASS' if ok else 'FAIL'} {name}" + (f": {detail}" if detail else "")
        _LINES.append(line)
        print(line)
        return ok

    return emit


def pytest_terminal_summary(terminalreporter):
    if _LINES:
        terminalreporter.section("acceptance criteria")
        for line in _LINES:
            terminalreporter.write_line(line)
