"""Runs the twelve acceptance criteria; one PASS/FAIL line each is printed in
the terminal summary (and to stdout when run with -s)."""

import pytest

from gds_tqft import acceptance

from .conftest import ACCEPTANCE_LINES


@pytest.mark.parametrize("number", [n for n, _, _ in acceptance.CRITERIA])
def test_criterion(number):
    result = acceptance.run_one(number)
    ACCEPTANCE_LINES.append(result.line())
    print(result.line())
    assert result.passed, result.detail
