"""The ten acceptance criteria, one test each.

Each test prints its ``criterion N PASS|FAIL ...`` line; the collected lines
are repeated in the terminal summary.  Run ``python3 tests/test_acceptance.py``
for the table alone.
"""

import sys

import pytest

from f2fpart.suite import CRITERIA, Context, run_one, table

LINES: list[str] = []


@pytest.fixture(scope="module")
def ctx():
    return Context()


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number, ctx):
    r = run_one(number, ctx)
    print(r.line())
    for note in r.notes:
        print(f"    {note}")
    LINES.append(r.line())
    assert r.error is None, r.error
    assert r.passed, r.detail


if __name__ == "__main__":
    context = Context()
    results = [run_one(n, context) for n in sorted(CRITERIA)]
    sys.stdout.write(table(results))
    sys.exit(0 if all(r.passed for r in results) else 1)
