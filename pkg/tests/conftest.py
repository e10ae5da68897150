import random

import pytest
from hypothesis import strategies as st

from abscgt.forms import Arena
from abscgt.sampling import random_form


@pytest.fixture
def arena():
    return Arena()


@pytest.fixture(scope="session")
def shared_arena():
    return Arena()


def form_strategy(arena: Arena, max_birthday: int = 3):
    """Hypothesis strategy drawing forms through a seeded generator."""
    return st.integers(min_value=0, max_value=2**32 - 1).map(
        lambda seed: random_form(arena, random.Random(seed), max_birthday)
    )


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
