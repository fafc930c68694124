import pytest

from polymodels.algebra import symbols

ACCEPTANCE_LINES: dict[str, str] = {}


def record_criterion(key: str, title: str, ok: bool, detail: str = "") -> str:
    """Print and remember one PASS/FAIL line for the acceptance summary."""
    line = f"{'PASS' if ok else 'FAIL'}  criterion {key}: {title}"
    if detail:
        line += f"  [{detail}]"
    ACCEPTANCE_LINES[key] = line
    print(line)
    return line


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")

    def order(key: str):
        head = key.rstrip("abcdefghijklmnopqrstuvwxyz")
        return int(head), key[len(head):]

    for key in sorted(ACCEPTANCE_LINES, key=order):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])


@pytest.fixture(scope="session")
def xyz():
    return symbols("x y z")
