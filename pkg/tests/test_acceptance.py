"""Acceptance table: every release gate of the library, one test per
criterion, each printing a single pass/fail line.

The lines go through pytest's terminal reporter so they stay visible in the
run log despite output capture; the same table is available from the command
line as ``eck table``.
"""

import sys

import pytest

from eck.suite import CRITERIA


@pytest.fixture
def emit(request):
    reporter = request.config.pluginmanager.get_plugin("terminalreporter")

    def _emit(line: str) -> None:
        if reporter is not None:
            reporter.write_line(line)
        else:
            print(line, file=sys.__stderr__, flush=True)

    return _emit


@pytest.mark.parametrize("criterion", CRITERIA, ids=[f.__name__ for f in CRITERIA])
def test_criterion(criterion, emit):
    r = criterion()
    line = f"[{'PASS' if r.passed else 'FAIL'}] criterion {r.number} - {r.name}: {r.detail}"
    emit(line)
    assert r.passed, line
