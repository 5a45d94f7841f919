import numpy as np
import pytest

from cutquad.error_estimator import Norm, PolynomialSpace, exact_data
from cutquad.geometry import BoxCell, make_ellipsoid_exclusion
from cutquad.octree import partition_element

UNIT2 = BoxCell(0, (0.0, 0.0), 1.0)
UNIT3 = BoxCell(0, (0.0, 0.0, 0.0), 1.0)


def circle(depth=3, r=0.6):
    return partition_element(make_ellipsoid_exclusion(r, r, 0.0, 2), UNIT2, depth)


def sphere(depth=3, r=0.6):
    return partition_element(make_ellipsoid_exclusion(r, r, 0.0, 3), UNIT3, depth)


@pytest.fixture(scope="session")
def circle3():
    return circle(3)


@pytest.fixture(scope="session")
def sphere2():
    return sphere(2)


@pytest.fixture(scope="session")
def sphere3():
    return sphere(3)


@pytest.fixture(scope="session")
def circle3_exact(circle3):
    space = PolynomialSpace(2, 8, Norm.H1)
    return space, exact_data(circle3, space)


@pytest.fixture(scope="session")
def sphere3_exact(sphere3):
    space = PolynomialSpace(3, 5, Norm.H1)
    return space, exact_data(sphere3, space)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


# acceptance criteria outcomes, printed at the end of the run
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
