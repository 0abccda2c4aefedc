from fractions import Fraction

import pytest

from eval.census import check_arrangement_2d
from eval.oracles import sign_vector_census_2d
from geometry.arrangement2d import (
    build_arrangement_2d,
    compute_box_half_width_2d,
    zone_2d,
)
from geometry.errors import (
    BoxGenericityViolation,
    BoxTooSmall,
    DegenerateQuery,
    NotGeneralPosition,
)
from geometry.exact import Line2, Point2


@pytest.fixture
def triangle_lines():
    return [Line2(1, 0, 0, id=0), Line2(0, 1, 0, id=1), Line2(1, 1, -1, id=2)]


def test_empty_arrangement():
    arr = build_arrangement_2d([], 10)
    assert len(arr.faces) == 1
    assert arr.generator_vertex_count == 0
    assert arr.faces[0].edge_count == 0


def test_axes_quadrants(axes_arrangement):
    assert len(axes_arrangement.faces) == 4
    assert [face.edge_count for face in axes_arrangement.faces] == [2, 2, 2, 2]
    assert all(face.touches_box for face in axes_arrangement.faces)
    assert axes_arrangement.generator_vertex_count == 1
    assert len(axes_arrangement.edges) == 4


def test_triangle(triangle_lines):
    arr = build_arrangement_2d(triangle_lines, 10)
    assert len(arr.faces) == 7
    interior = [face for face in arr.faces if not face.touches_box]
    assert len(interior) == 1
    assert interior[0].edge_count == 3
    assert interior[0].sign_vector[0] == 1
    assert interior[0].sign_vector[1] == 1
    assert interior[0].sign_vector[2] == -1
    check_arrangement_2d(arr)


def test_faces_match_sign_vector_census(triangle_lines):
    arr = build_arrangement_2d(triangle_lines, 10)
    built = {tuple(face.sign_vector[line.id] for line in arr.lines) for face in arr.faces}
    assert sign_vector_census_2d(arr.lines, arr.box_half_width) == built


def test_locate(axes_arrangement):
    face = axes_arrangement.locate(Point2(1, -1))
    assert face.sign_vector[0] == 1 and face.sign_vector[1] == -1
    assert axes_arrangement.locate(Point2(0, 3)) is None
    assert axes_arrangement.locate(Point2(10, 1)) is None


def test_rejects_degenerate_lines():
    with pytest.raises(NotGeneralPosition):
        build_arrangement_2d([Line2(1, 0, 0), Line2(1, 0, -1)], 10)


def test_rejects_small_box(triangle_lines):
    with pytest.raises(BoxTooSmall):
        build_arrangement_2d(triangle_lines, 1)
    with pytest.raises(BoxTooSmall):
        build_arrangement_2d([Line2(1, -1, 0)], 10)


def test_box_half_width_2d(triangle_lines):
    assert compute_box_half_width_2d(triangle_lines) == 2
    assert compute_box_half_width_2d(triangle_lines, start=7) == 7
    assert compute_box_half_width_2d([Line2(1, -1, 1)]) == 1
    # the lines meet at (2, 1), and 4u + v - 9 = 0 passes through the corner (3, -3)
    lines = [Line2(1, 0, -2), Line2(4, 1, -9)]
    half_width = compute_box_half_width_2d(lines)
    assert half_width == 4
    for line in lines:
        for su in (1, -1):
            for sv in (1, -1):
                assert line.evaluate(Point2(su * half_width, sv * half_width)) != 0


def test_zone_of_axes(axes_arrangement):
    zone = zone_2d(axes_arrangement, Line2(1, 1, -5))
    assert zone.face_count == 3
    assert zone.zone_size == 6
    missed = axes_arrangement.face_for_signs({0: -1, 1: -1})
    assert missed.id not in zone.face_ids


def test_zone_of_single_line():
    arr = build_arrangement_2d([Line2(1, 0, 0)], 10)
    zone = zone_2d(arr, Line2(0, 1, 0))
    assert zone.face_count == 2
    assert zone.zone_size == 2


def test_zone_of_empty_arrangement():
    zone = zone_2d(build_arrangement_2d([], 10), Line2(1, 1, 0))
    assert zone.face_count == 1
    assert zone.zone_size == 0


def test_box_is_crossed_by_far_query_line():
    far = Line2(1, 1, -100)
    half_width = compute_box_half_width_2d([], [far])
    assert half_width == 51
    zone = zone_2d(build_arrangement_2d([], half_width), far)
    assert zone.face_count == 1
    assert zone.zone_size == 0
    assert compute_box_half_width_2d([], [far], start=60) == 60


def test_zone_vertex_count(triangle_lines):
    arr = build_arrangement_2d(triangle_lines, 10)
    zone = zone_2d(arr, Line2(1, -1, Fraction(1, 4)))
    assert zone.vertex_count == 3
    assert zone.face_count >= 1


def test_degenerate_queries(axes_arrangement):
    with pytest.raises(DegenerateQuery):
        zone_2d(axes_arrangement, Line2(1, 0, -1))
    with pytest.raises(DegenerateQuery):
        zone_2d(axes_arrangement, Line2(1, 1, 0))
    with pytest.raises(DegenerateQuery):
        zone_2d(axes_arrangement, Line2(1, 1, -30))


def test_box_half_width_2d_unattainable():
    with pytest.raises(BoxGenericityViolation):
        compute_box_half_width_2d([Line2(1, -1, 0)])
