"""The thirteen acceptance criteria, exact, one pass/fail line each."""
import pytest

from superlinks.acceptance import CRITERIA, run_criterion

RESULTS = []


@pytest.mark.parametrize("number", range(1, len(CRITERIA) + 1))
def test_criterion(number):
    result = run_criterion(CRITERIA[number - 1], number)
    RESULTS.append(result)
    print(result.line())
    assert result.ok, result.detail
