"""Acceptance criteria 1-8; each prints one PASS/FAIL line (run with -s to see them inline)."""

import pytest

from twistlab.acceptance import CRITERIA


@pytest.mark.parametrize("criterion", CRITERIA, ids=[f"criterion_{i}" for i in range(1, len(CRITERIA) + 1)])
def test_criterion(criterion, capsys):
    result = criterion()
    with capsys.disabled():
        print("\n" + result.line())
    for f in result.findings:
        print("finding:", f)
    assert result.ok, result.failures
