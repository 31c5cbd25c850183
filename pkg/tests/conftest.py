from functools import lru_cache

import pytest

from matroidstack.census import matroid_levels

# criterion id -> (description, passed); filled by test_acceptance.py
ACCEPTANCE: dict[int, tuple[str, bool]] = {}


@lru_cache(maxsize=None)
def census_levels(n: int) -> tuple[tuple, ...]:
    """Every matroid on [n] (n <= 7), grouped by rank; one BFS per n per session."""
    return tuple(tuple(level) for level in matroid_levels(n, n))


@pytest.fixture(scope="session")
def census():
    return census_levels


def record(criterion: int, description: str, passed: bool) -> None:
    ACCEPTANCE[criterion] = (description, passed)
    print(f"criterion {criterion}: {'PASS' if passed else 'FAIL'} - {description}")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for cid in sorted(ACCEPTANCE):
        desc, ok = ACCEPTANCE[cid]
        terminalreporter.write_line(f"criterion {cid:2d}: {'PASS' if ok else 'FAIL'}  {desc}")
