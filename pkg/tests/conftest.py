import pytest

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def criterion(request):
    """Record a one-line verdict for an acceptance criterion."""
    state = {}

    def record(name, passed, detail=""):
        state["line"] = f"[{'PASS' if passed else 'FAIL'}] {name}: {detail}"

    yield record
    line = state.get("line")
    if line is None:
        line = f"[FAIL] {request.node.name}: did not complete"
    ACCEPTANCE_LINES.append(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
