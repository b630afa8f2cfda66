"""Runs the sixteen acceptance criteria and prints one PASS/FAIL line each."""

import pytest

from ietabel.acceptance import CRITERIA, run


@pytest.mark.parametrize("number", range(1, len(CRITERIA) + 1),
                         ids=[f"{k:02d}-{name.replace(' ', '-')}" for k, (name, _) in enumerate(CRITERIA, 1)])
def test_criterion(number):
    result = run(number)
    print(result.line())
    assert result.ok, result.line()


def test_summary(capsys):
    # One line per criterion in a single block, visible with `pytest -s` or in the captured report.
    results = [run(k) for k in range(1, len(CRITERIA) + 1)]
    with capsys.disabled():
        print()
        for r in results:
            print(r.line())
    assert all(r.ok for r in results)
