import random

import numpy as np
import pytest
from hypothesis import strategies as st

PRIMES = [5, 7, 11, 13, 17, 19, 23, 29, 31]
SMALL_PRIMES = [5, 7, 11]


@pytest.fixture
def rng():
    return random.Random(12345)


def residues(p, n):
    return st.lists(st.integers(0, p - 1), min_size=n, max_size=n).map(lambda v: np.array(v, dtype=np.int64))
