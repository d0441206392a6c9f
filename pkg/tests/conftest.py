"""Shared fixtures and the acceptance-summary reporter.

The fixtures are the small worked examples used across the suite; the
terminal-summary hook prints one PASS/FAIL line per acceptance criterion
exercised by tests/test_acceptance.py.
"""

import re

import numpy as np
import pytest

from liquidpower import matrix_from_columns, matrix_from_rows

CRITERIA = {
    1: "five-agent chain worked example, exact measure, < 1 ms",
    2: "iterative comparison measure truncations vs exact invariance",
    3: "mixed-strategy measure on the four-agent pair",
    4: "delegation-equivalence transform, exact reduced profile",
    5: "conservation suite, 300 trials, < 5 s",
    6: "consistency suite: floor and zero-retention",
    7: "generalization suite: exact vs classic on 0/1 diagonals",
    8: "delegation invariance and penalized deviation bound",
    9: "limit suite: deviation shrinks along the epsilon ladder",
    10: "game suite: vertex optimality, ties, dynamics, regrets, < 60 s",
    11: "oracle concordance: particles 3-sigma, enumeration exactness",
}


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    results = {}
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            nodeid = getattr(rep, "nodeid", "")
            m = re.search(r"test_acceptance\.py::test_criterion_(\d+)", nodeid)
            if not m:
                continue
            num = int(m.group(1))
            results[num] = results.get(num, True) and outcome == "passed"
    if not results:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for num in sorted(results):
        state = "PASS" if results[num] else "FAIL"
        terminalreporter.write_line(f"criterion {num:2d} [{state}] {CRITERIA[num]}")


@pytest.fixture
def chain5():
    """a delegates to b, b to c, c to d; d and e keep their votes."""
    rows = np.zeros((5, 5))
    rows[0, 1] = 1.0
    rows[1, 2] = 1.0
    rows[2, 3] = 1.0
    rows[3, 3] = 1.0
    rows[4, 4] = 1.0
    return matrix_from_rows(rows)


@pytest.fixture
def chain5_split():
    """Same as chain5 but b hands its weight to e instead of c."""
    rows = np.zeros((5, 5))
    rows[0, 1] = 1.0
    rows[1, 4] = 1.0
    rows[2, 3] = 1.0
    rows[3, 3] = 1.0
    rows[4, 4] = 1.0
    return matrix_from_rows(rows)


@pytest.fixture
def chain5_cycle():
    """chain5_split with e delegating back to a, closing a three-agent loop."""
    rows = np.zeros((5, 5))
    rows[0, 1] = 1.0
    rows[1, 4] = 1.0
    rows[2, 3] = 1.0
    rows[3, 3] = 1.0
    rows[4, 0] = 1.0
    return matrix_from_rows(rows)


@pytest.fixture
def half_keeper():
    """Two agents: 1 keeps half and sends half to 2, who keeps everything."""
    return matrix_from_columns(np.array([[0.5, 0.0], [0.5, 1.0]]))


@pytest.fixture
def triangle_left():
    """Three agents with a fractional keeper and a two-hop return path."""
    return matrix_from_rows(np.array([
        [0.5, 0.5, 0.0],
        [0.5, 0.0, 0.5],
        [0.0, 1.0, 0.0],
    ]))


@pytest.fixture
def triangle_right():
    """Variant of triangle_left with agent 3 returning weight to agent 1."""
    return matrix_from_rows(np.array([
        [0.5, 0.5, 0.0],
        [0.5, 0.0, 0.5],
        [1.0, 0.0, 0.0],
    ]))


@pytest.fixture
def star4_original():
    """Four agents: 3 hands everything to 2, who routes partly back to 3."""
    return matrix_from_columns(np.array([
        [1.0, 0.5, 0.0, 0.0],
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 0.25, 0.0, 0.0],
        [0.0, 0.25, 0.0, 1.0],
    ]))


@pytest.fixture
def star4_reduced():
    """star4_original after agent 3 absorbs agent 2's outward profile."""
    return matrix_from_columns(np.array([
        [1.0, 0.5, 2.0 / 3.0, 0.0],
        [0.0, 0.0, 0.0, 0.0],
        [0.0, 0.25, 0.0, 0.0],
        [0.0, 0.25, 1.0 / 3.0, 1.0],
    ]))
