import pytest

from hhmp.permcore import Permutation

# the running S_7 example used throughout the worked examples
RUNNING = Permutation((3, 7, 1, 2, 5, 4, 6))

# A_w for RUNNING: 1 marks a star-1 entry, 2 a star-2 entry
RUNNING_STAR_GRID = [
    [0, 0, 1, 2, 0, 0, 0, 0],
    [0, 0, 1, 0, 2, 0, 0, 0],
    [1, 2, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 1, 2, 0],
    [0, 0, 1, 0, 0, 2, 0, 0],
    [0, 0, 1, 0, 0, 0, 0, 2],
    [1, 0, 2, 0, 0, 0, 0, 0],
    [2, 0, 0, 0, 0, 0, 0, 0],
]

# generic element of the Schubert cell of iota(RUNNING), columns spanning the flag
SCHUBERT_EXAMPLE_GRID = [
    [0, 0, 1, 1, 0, 1, 1, 1],
    [0, 0, 1, 1, 0, 1, 1, 1],
    [1, 0, 1, 1, 0, 1, 1, 1],
    [1, 0, 1, 1, 0, 1, 1, 1],
    [1, 0, 1, 1, 1, 1, 1, 1],
    [1, 0, 1, 1, 1, 1, 1, 1],
    [1, 1, 1, 1, 1, 1, 1, 1],
    [1, 1, 1, 1, 1, 1, 1, 1],
]


@pytest.fixture
def running():
    return RUNNING
