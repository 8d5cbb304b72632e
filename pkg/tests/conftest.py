import random

import pytest

from fleajump.search import FIXTURES


@pytest.fixture
def g_points():
    return FIXTURES["G"]


@pytest.fixture
def h_points():
    return FIXTURES["H"]


@pytest.fixture
def rng():
    return random.Random(0x5EED)


def random_word(rng, max_len, alphabet=("U", "V", "W", "U'", "V'", "W'")):
    return " ".join(rng.choice(alphabet) for _ in range(rng.randint(0, max_len)))
