import pytest

_RESULTS: list[tuple[str, bool, str]] = []


@pytest.fixture
def criterion():
    """Record one acceptance line: criterion(name, ok, detail)."""

    def record(name, ok, detail=""):
        _RESULTS.append((name, bool(ok), detail))
        assert ok, f"{name}: {detail}"

    return record


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in _RESULTS:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}")
