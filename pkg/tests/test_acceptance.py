"""Acceptance gate: every criterion runs at its stated tolerance and prints
one pass/fail line. `gul selftest` executes the same suite.
"""

import subprocess
import sys
import time

import pytest

from gul import acceptance


@pytest.mark.parametrize("criterion", acceptance.CRITERIA,
                         ids=[c.__name__ for c in acceptance.CRITERIA])
def test_criterion(criterion):
    t0 = time.time()
    result = criterion()
    result.elapsed = time.time() - t0
    print(result.line())
    assert result.passed, result.line()


def test_selftest_command_exits_zero():
    proc = subprocess.run([sys.executable, "-m", "gul.cli", "selftest"],
                          capture_output=True, text=True, timeout=1800)
    assert proc.returncode == 0, proc.stdout + proc.stderr
    lines = [l for l in proc.stdout.splitlines() if l.startswith(("PASS", "FAIL"))]
    assert len(lines) == len(acceptance.CRITERIA)
    assert all(l.startswith("PASS") for l in lines)
