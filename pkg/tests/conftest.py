import itertools
import random

import pytest

from ordercanon.io import generate_points
from ordercanon.predicates import ChirotopeTable, PointOracle, PointSet, TableOracle

SQUARE_CENTER = [(0, 0), (2, 0), (2, 2), (0, 2), (1, 1)]
TRIANGLE = [(0, 0), (2, 0), (0, 2)]
GRID3 = [(x, y) for x in range(3) for y in range(3)]
P7 = [(2, 0), (1, 2), (-1, 2), (-2, 0), (-1, -2), (1, -2), (0, 1), (0, -1)]
TETRA_CENTROID = [(1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1), (0, 0, 0)]
OCTAHEDRON = [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)]


def pts(points):
    return PointOracle(PointSet(tuple(points)))


def cyclic_chirotope(n):
    signs = {t: 1 for t in itertools.combinations(range(n), 3)}
    return TableOracle(ChirotopeTable(3, n, signs))


def random_planar(rng, n, R=None, collinear_frac=0.0):
    R = R or max(3, int(n ** 0.5) + 1)
    return pts(generate_points(n, 2, rng.randrange(10 ** 9), R, collinear_frac).points)


def random_general(rng, n, d, R=20):
    return pts(generate_points(n, d, rng.randrange(10 ** 9), R, general_position=True).points)


def shuffled(rng, n):
    p = list(range(n))
    rng.shuffle(p)
    return p


@pytest.fixture
def square_center():
    return pts(SQUARE_CENTER)


@pytest.fixture
def triangle():
    return pts(TRIANGLE)


@pytest.fixture
def grid3():
    return pts(GRID3)


@pytest.fixture
def rng():
    return random.Random(12345)


# acceptance criteria report lines, printed in the terminal summary
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[k])
