from fractions import Fraction

from geometry.exact import Line2, Plane
from geometry.general_position import general_position_2d, general_position_3d


def test_lines_in_general_position():
    assert general_position_2d([Line2(1, 0, 0), Line2(0, 1, 0)])
    assert general_position_2d([])


def test_parallel_lines():
    report = general_position_2d([Line2(1, 0, 0, id=0), Line2(1, 0, -1, id=1)])
    assert not report
    assert report.kind == "parallel"
    assert report.ids == (0, 1)


def test_concurrent_lines():
    report = general_position_2d([Line2(1, 0, 0), Line2(0, 1, 0), Line2(1, 1, 0)])
    assert report.kind == "concurrent"
    assert report.ids == (0, 1, 2)
    assert report.describe() == "concurrent [0, 1, 2]"


def test_planes_in_general_position(octant_planes, octant_query):
    assert general_position_3d(octant_planes)
    assert general_position_3d(octant_planes, octant_query)


def test_parallel_planes():
    report = general_position_3d([Plane(1, 0, 0, 0), Plane(1, 0, 0, -1)])
    assert report.kind == "parallel"


def test_planes_sharing_a_line():
    report = general_position_3d([Plane(1, 0, 0, 0), Plane(0, 1, 0, 0), Plane(1, 1, 0, 0)])
    assert report.kind == "common_line"


def test_planes_without_common_point():
    report = general_position_3d([Plane(1, 0, 0, 0), Plane(0, 1, 0, 0), Plane(1, 1, 0, -1)])
    assert report.kind == "no_common_point"


def test_four_planes_through_a_point(simplex_planes):
    planes = simplex_planes[:3] + [Plane(1, 2, 3, 0, id=3)]
    report = general_position_3d(planes)
    assert report.kind == "common_point"
    assert report.ids == (0, 1, 2, 3)


def test_query_plane_takes_part(octant_planes):
    report = general_position_3d(octant_planes, Plane(1, 1, 1, 0))
    assert report.kind == "common_point"
    assert report.ids[-1] == "S"

    report = general_position_3d(octant_planes, Plane(1, 0, 0, Fraction(-1, 2)))
    assert report.kind == "parallel"
    assert report.ids == (0, "S")
