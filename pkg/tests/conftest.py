import random
import sys
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))


@pytest.fixture
def rng():
    return random.Random(20261018)


def random_rational(rng, span=20, den=12):
    return Fraction(rng.randint(-span, span), rng.randint(1, den))


ACCEPTANCE_LINES = []


@pytest.fixture
def accept():
    """Record one pass/fail line per acceptance criterion and assert it."""

    def record(criterion, ok, detail):
        line = f"[criterion {criterion}] {'PASS' if ok else 'FAIL'}: {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
