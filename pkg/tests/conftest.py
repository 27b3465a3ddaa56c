import pytest

ACCEPTANCE = []


@pytest.fixture
def criterion(request):
    """Record one PASS/FAIL line per acceptance criterion."""

    def record(label, ok, detail=""):
        ACCEPTANCE.append((label, bool(ok), detail))
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label, ok, detail in ACCEPTANCE:
        line = f"{'PASS' if ok else 'FAIL'}  {label}"
        if detail:
            line += f"  ({detail})"
        terminalreporter.write_line(line)
