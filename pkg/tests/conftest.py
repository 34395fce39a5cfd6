import random

import pytest

from t0lab import enumerate_posets, parse_space, random_space

EXPECTED_COUNTS = {1: 1, 2: 2, 3: 5, 4: 16, 5: 63}


@pytest.fixture(scope="session")
def all_posets():
    """Every T0 space up to homeomorphism with 1..5 points, keyed by size."""
    out = {}
    for n in range(1, 6):
        out[n] = enumerate_posets(n)
        assert len(out[n]) == EXPECTED_COUNTS[n]
    return out


@pytest.fixture(scope="session")
def corpus():
    """500 seeded random spaces with up to 8 points."""
    rng = random.Random(7)
    return [random_space(rng, max_points=8) for _ in range(500)]


@pytest.fixture(scope="session")
def sier():
    return parse_space({"points": ["a", "b"], "covers": [["a", "b"]]})


@pytest.fixture(scope="session")
def diamond():
    return parse_space(
        {
            "points": ["bot", "l", "r", "top"],
            "covers": [["bot", "l"], ["bot", "r"], ["l", "top"], ["r", "top"]],
        }
    )


@pytest.fixture(scope="session")
def anti3():
    return parse_space({"points": ["x", "y", "z"], "covers": []})
