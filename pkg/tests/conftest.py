import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from realtoric.simplicial import SimplicialComplex  # noqa: E402


def boundary_of_simplex(n):
    return SimplicialComplex.from_simplices([[v for v in range(n + 1) if v != i] for i in range(n + 1)])


@pytest.fixture
def hexagon():
    return SimplicialComplex.from_simplices([[i, (i + 1) % 6] for i in range(6)])


@pytest.fixture
def torus():
    # 7-vertex triangulation
    tri = [[i, (i + 1) % 7, (i + 3) % 7] for i in range(7)] + [[i, (i + 2) % 7, (i + 3) % 7] for i in range(7)]
    return SimplicialComplex.from_simplices(tri)


@pytest.fixture
def rp2():
    # 6-vertex real projective plane
    tri = [[0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 5], [0, 5, 1],
           [1, 2, 4], [2, 3, 5], [3, 4, 1], [4, 5, 2], [5, 1, 3]]
    return SimplicialComplex.from_simplices(tri)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
