"""Acceptance suite: one test per criterion on the default grids.

Each test prints its PASS/FAIL line (even under output capture) and fails
if the criterion or the 10 s time budget is missed.
"""
import time

import pytest

from gconv.verify import run_checks

CRITERIA = [
    (1, "transform_pairs"),
    (2, "parseval"),
    (3, "derivative_symbol"),
    (4, "round_trip"),
    (5, "lemma_decomposition"),
    (6, "manufactured"),
    (7, "not_elliptic"),
    (8, "cauchy"),
    (9, "convolution"),
    (10, "identities"),
]
BUDGET_SECONDS = 10.0


@pytest.mark.parametrize("number,name", CRITERIA, ids=[n for _, n in CRITERIA])
def test_criterion(number, name, capsys):
    start = time.perf_counter()
    (result,) = run_checks([name])
    elapsed = time.perf_counter() - start
    with capsys.disabled():
        print(f"\n[{number:2d}] {result.line()}  ({elapsed:.2f} s)")
    assert result.passed, result.line()
    assert elapsed < BUDGET_SECONDS
