"""Shared fixtures for the isolab test suite."""

import pytest

from isolab import families

HULL_SIZES = (6, 10, 16, 28, 48)


@pytest.fixture(scope="session")
def hull_pool():
    """Forty seeded random hulls of mixed size, reused by property tests."""
    return [families.random_convex(HULL_SIZES[s % len(HULL_SIZES)], seed=s)
            for s in range(40)]
