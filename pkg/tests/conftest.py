import os
from fractions import Fraction

import pytest

from geometry.arrangement2d import build_arrangement_2d
from geometry.arrangement3d import build_arrangement_3d, compute_box_half_width
from geometry.exact import Line2, Plane

ROOT_DIR = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


@pytest.fixture
def octant_planes():
    return [Plane(1, 0, 0, 0, id=0), Plane(0, 1, 0, 0, id=1), Plane(0, 0, 1, 0, id=2)]


@pytest.fixture
def octant_query():
    return Plane(1, 1, 1, Fraction(-1, 2))


@pytest.fixture
def octant_arrangement(octant_planes, octant_query):
    return build_arrangement_3d(
        octant_planes, compute_box_half_width(octant_planes, [octant_query])
    )


@pytest.fixture
def simplex_planes():
    return [
        Plane(1, 0, 0, 0, id=0),
        Plane(0, 1, 0, 0, id=1),
        Plane(0, 0, 1, 0, id=2),
        Plane(1, 1, 1, -1, id=3),
    ]


@pytest.fixture
def axes_lines():
    return [Line2(1, 0, 0, id=0), Line2(0, 1, 0, id=1)]


@pytest.fixture
def axes_arrangement(axes_lines):
    return build_arrangement_2d(axes_lines, 10)


@pytest.fixture
def octant_file():
    return os.path.join(ROOT_DIR, "data", "octant", "planes.txt")


@pytest.fixture
def axes_file():
    return os.path.join(ROOT_DIR, "data", "axes2d", "lines.txt")
