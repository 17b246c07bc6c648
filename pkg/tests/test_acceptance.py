"""Acceptance criteria, one test per check, each printing its PASS/FAIL line.

The "1-window" and "6-negated" checks are expected to fail; see README.
"""

import functools

import pytest

from singzeta import acceptance


@functools.lru_cache(maxsize=None)
def results_of(criterion):
    return {r.key: r for r in acceptance.CRITERIA[criterion]()}


def check(key, capsys):
    criterion = int(key.split("-")[0])
    result = results_of(criterion)[key]
    with capsys.disabled():
        print("\n" + result.line())
    assert result.passed, result.line()


@pytest.mark.parametrize("key", ["1", "1-window", "2", "3", "4", "5", "6", "6-negated",
                                 "7", "8", "9"])
def test_criterion(key, capsys):
    check(key, capsys)
