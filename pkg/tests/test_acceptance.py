"""Acceptance criteria at full size; one PASS/FAIL line per criterion."""

import pytest

from halfcavity.acceptance import CRITERIA, run_criterion

from conftest import ACCEPTANCE_LINES


@pytest.mark.parametrize("number", [c[0] for c in CRITERIA], ids=[f"c{c[0]}-{c[1].replace(' ', '_')}" for c in CRITERIA])
def test_criterion(number):
    result = run_criterion(number, "full")
    line = result.line()
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert result.elapsed <= result.budget, f"runtime {result.elapsed:.2f}s over {result.budget}s budget"
    assert result.passed, line
