import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from primaltop.spaces import make_space  # noqa: E402


@pytest.fixture
def s1():
    """n=3, opens {0, {0}, X}, primal = sets not containing element 2."""
    return make_space(3, [0, 1, 7], generator=0b100)


_CRITERIA = []


@pytest.fixture
def criterion():
    """Record one acceptance line; printed in the terminal summary."""
    def record(label, ok, detail=""):
        _CRITERIA.append((label, ok, detail))
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for label, ok, detail in _CRITERIA:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {label}: {detail}")
