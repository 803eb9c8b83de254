"""Acceptance criteria, one test each.

Each test prints a ``PASS name`` or ``FAIL name`` line (visible with ``-s`` or in
the terminal summary) and then asserts on the result.
"""

import pytest

from structramsey.experiments import EXPERIMENTS, run_experiment

RESULTS = {}


@pytest.mark.slow
@pytest.mark.parametrize("name", list(EXPERIMENTS))
def test_criterion(name, capsys):
    report = run_experiment(name, seed=0)
    RESULTS[name] = report
    with capsys.disabled():
        print(f"\n{report.line()}  ({report.elapsed:.1f}s)")
    assert report.passed, report.details

