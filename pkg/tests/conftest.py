import pytest

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def record():
    """Log one PASS/FAIL line per acceptance criterion for the terminal summary."""

    def _record(label: str, value: float | None = None, tol: float | None = None, ok: bool | None = None) -> bool:
        """Numeric criteria pass when ``value < tol``; yes/no criteria pass ``ok``."""
        passed = bool(value < tol) if ok is None else bool(ok)
        detail = f": {value:.3e} (tol {tol:.0e})" if tol is not None else ""
        ACCEPTANCE_LINES.append(f"{'PASS' if passed else 'FAIL'}  {label}{detail}")
        return passed

    return _record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
