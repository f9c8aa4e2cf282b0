"""The acceptance suite: one test per criterion, one pass/fail line each.

These run the exact criterion functions the `gridcuts verify` command uses;
run with -s to see the lines as they complete.
"""

import pytest

from gridcuts.verify import CRITERIA, run_criterion


@pytest.mark.parametrize("name", [name for name, _, _ in CRITERIA])
def test_criterion(name):
    result = run_criterion(name)
    print(f"{'PASS' if result.ok else 'FAIL'}  {name}  ({result.elapsed_s:.2f}s)")
    assert result.ok, "\n".join(result.failures)
