from pathlib import Path

import pytest
from hypothesis import settings, strategies as st

from owawinner import Instance, UtilityMatrix, OwaVector

DATA = Path(__file__).parent / "data"

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

# six agents: three of the first kind, two of the second, one of the third
EXAMPLE1_ROWS = [
    (5, 4, 3, 0, 2, 1),
    (5, 4, 3, 0, 2, 1),
    (5, 4, 3, 0, 2, 1),
    (4, 0, 2, 3, 1, 5),
    (4, 0, 2, 3, 1, 5),
    (0, 3, 2, 4, 5, 1),
]

EXJL_ROWS = [
    (10, 10, 9, 8, 5, 0),
    (6, 5, 0, 10, 8, 10),
    (8, 0, 10, 6, 10, 7),
]


def instance(rows, alpha):
    return Instance(UtilityMatrix(rows), OwaVector(tuple(alpha)))


@pytest.fixture
def example1():
    return instance(EXAMPLE1_ROWS, (2, 1, 0))


@pytest.fixture
def exjl():
    return instance(EXJL_ROWS, (2, 1, 0))


@st.composite
def small_instances(draw, max_n=4, max_m=6, max_K=4, nonincreasing=False, max_u=10):
    n = draw(st.integers(1, max_n))
    m = draw(st.integers(1, max_m))
    K = draw(st.integers(1, min(m, max_K)))
    rows = draw(st.lists(st.lists(st.integers(0, max_u), min_size=m, max_size=m),
                         min_size=n, max_size=n))
    alpha = draw(st.lists(st.integers(0, 5), min_size=K, max_size=K).filter(any))
    if nonincreasing:
        alpha = sorted(alpha, reverse=True)
    return instance(rows, alpha)
