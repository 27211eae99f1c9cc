import re

import pytest

_LINES: list[str] = []


@pytest.fixture
def criterion_line():
    """Record the one-line verdict of an acceptance criterion."""
    return _LINES.append


def pytest_terminal_summary(terminalreporter):
    if not _LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(_LINES, key=lambda s: int(re.search(r"criterion (\d+)", s).group(1))):
        terminalreporter.write_line(line)
