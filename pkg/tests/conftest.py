import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))  # for `oracles`

from gapscope import primes_first
from gapscope.sequences import NATURALS, PRIMES, build_series

FULL_N = 1 << 20

# h(n)/h(n+1) at n needs s_{n+1}, so the shared table carries one extra prime
@pytest.fixture(scope="session")
def big_table():
    return primes_first(FULL_N + 1)


@pytest.fixture(scope="session")
def mid_table():
    return primes_first((1 << 14) + 1)


@pytest.fixture(scope="session")
def small_table():
    return primes_first(100)


@pytest.fixture(scope="session")
def a_series(big_table):
    """Prime exponent series over n in [2, 2^20 - 1]."""
    return build_series(PRIMES, 2, FULL_N - 1, big_table)


@pytest.fixture(scope="session")
def b_series():
    """Naturals exponent series over n in [3, 2^20]."""
    return build_series(NATURALS, 3, FULL_N)
