import itertools

import pytest

from sortstat.dyck import DyckPath


def brute_inv(word):
    return sum(1 for a, b in itertools.combinations(word, 2) if a > b)


def brute_paths(n):
    """All U/D words of length 2n that never dip below zero."""
    out = []
    for bits in itertools.product("UD", repeat=2 * n):
        level, ok = 0, True
        for ch in bits:
            level += 1 if ch == "U" else -1
            if level < 0:
                ok = False
                break
        if ok and level == 0:
            out.append(DyckPath("".join(bits)))
    return out


@pytest.fixture
def uudd():
    return DyckPath("UUDD")


# one line per acceptance criterion, shown even when output is captured
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
