"""Shared fixtures: ladder sets are expensive enough to build once.

Acceptance criteria register their pass/fail lines here so they are
re-printed in the terminal summary, past pytest's output capture.
"""

import numpy as np
import pytest

from qsqueeze.ladder import build_ladder

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def ladder64():
    return build_ladder(64)


@pytest.fixture(scope="session")
def ladder128():
    return build_ladder(128)


@pytest.fixture()
def rng():
    return np.random.default_rng(20240811)


@pytest.fixture(scope="session")
def ledger():
    from qsqueeze.ledger import build_ledger
    return build_ledger()
