"""All acceptance criteria at their stated tolerances, one test and one summary line each."""

import pytest

from qboundstate import acceptance

LINES: dict[int, str] = {}


@pytest.mark.parametrize("fn", acceptance.CRITERIA, ids=lambda f: f.__name__)
def test_criterion(fn):
    res = fn()
    LINES[res.number] = res.line()
    print(res.line())
    assert res.passed, res.line()
