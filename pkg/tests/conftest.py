import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))


@pytest.fixture(scope="session", autouse=True)
def compiled_kernels():
    # one-time numba compilation (or cache load) stays out of timed checks
    from entdyn.matcore import eig_hermitian

    eig_hermitian(np.eye(4, dtype=complex))


@pytest.fixture
def rng():
    return np.random.default_rng(20011)


# criterion id -> (passed, detail), filled by test_acceptance.py
ACCEPTANCE_RESULTS = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for cid in sorted(ACCEPTANCE_RESULTS, key=lambda c: (int(c.rstrip("ab")), c)):
        passed, detail = ACCEPTANCE_RESULTS[cid]
        terminalreporter.write_line(f"criterion {cid}: {'PASS' if passed else 'FAIL'}  {detail}")
