import numpy as np
import pytest

from heckezeta.group import character_rep, induce_from_index2, sign_rep, trivial_rep


@pytest.fixture
def four_reps():
    """Trivial, sign, a non-real character and the 2-dim induced rep."""
    return [trivial_rep(), sign_rep(), character_rep(0.3, -1), induce_from_index2(3.0)]


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
