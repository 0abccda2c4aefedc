"""Exact geometry: scalars, predicates, and 2D/3D arrangements."""

from geometry.arrangement2d import (
    Arrangement2,
    Face2,
    Zone2Report,
    build_arrangement_2d,
    compute_box_half_width_2d,
    zone_2d,
)
from geometry.arrangement3d import (
    Arrangement3,
    Cell3,
    FaceRecord,
    PlaneChart,
    Zone3Report,
    build_arrangement_3d,
    compute_box_half_width,
    induced_arrangement,
    remove_plane,
    zone_3d,
)
from geometry.exact import (
    Line2,
    ParametricLine,
    Plane,
    Point2,
    Point3,
    intersect_three_planes,
    intersect_two_lines,
    intersect_two_planes,
    side_of_line,
    side_of_plane,
)
from geometry.general_position import (
    GeneralPositionReport,
    general_position_2d,
    general_position_3d,
)
