import pytest

from oracles import suffix_scan_member


@pytest.fixture(scope="session")
def oracle_members_1e5():
    """Brute-force membership for every n in [0, 10**5]."""
    return [False] + [suffix_scan_member(n) for n in range(1, 100_001)]


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
