"""
Line arrangements clipped to a bounding square, and their zones.

Faces are enumerated combinatorially: every face of the clipped arrangement is a
bounded convex polygon with at least one vertex, so flipping the two supporting signs
around every vertex reaches every face. Edge counts only include edges supported by
generator lines; the four sides of the square are scaffolding.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from geometry.errors import (
    BoxGenericityViolation,
    BoxTooSmall,
    DegenerateQuery,
    NotGeneralPosition,
)
from geometry.exact import (
    Line2,
    Point2,
    Scalar,
    as_fraction,
    centroid2,
    det2,
    intersect_two_lines,
    side_of_line,
)
from geometry.general_position import general_position_2d

logger = logging.getLogger(__name__)

BOX_LINE_IDS = (-1, -2, -3, -4)

# increments tried before a box is declared unattainable, e.g. for u = v
MAX_BOX_STEPS = 256


def box_lines_2d(half_width: Fraction) -> Tuple[Line2, ...]:
    """
    The four sides ``u = W``, ``u = -W``, ``v = W``, ``v = -W`` of the bounding square.
    """
    return (
        Line2(1, 0, -half_width, id=BOX_LINE_IDS[0]),
        Line2(1, 0, half_width, id=BOX_LINE_IDS[1]),
        Line2(0, 1, -half_width, id=BOX_LINE_IDS[2]),
        Line2(0, 1, half_width, id=BOX_LINE_IDS[3]),
    )


# sign every interior point takes with respect to each box side
BOX_INTERIOR_SIGNS_2D = {-1: -1, -2: 1, -3: -1, -4: 1}


def box_corners_2d(half_width: Fraction) -> List[Point2]:
    return [
        Point2(su * half_width, sv * half_width) for su in (1, -1) for sv in (1, -1)
    ]


@dataclass(frozen=True)
class Vertex2:
    point: Point2
    line_ids: Tuple[int, int]

    @property
    def is_generator_vertex(self) -> bool:
        return all(line_id >= 0 for line_id in self.line_ids)


@dataclass(frozen=True)
class Edge2:
    line_id: int
    vertex_ids: Tuple[int, int]
    face_ids: Tuple[int, int]


@dataclass(frozen=True)
class Face2:
    id: int
    sign_vector: Dict[int, int]
    edge_count: int
    representative_point: Point2
    vertex_ids: Tuple[int, ...]
    touches_box: bool


@dataclass(frozen=True)
class Arrangement2:
    lines: Tuple[Line2, ...]
    box_half_width: Fraction
    vertices: Tuple[Vertex2, ...]
    faces: Tuple[Face2, ...]
    edges: Tuple[Edge2, ...]
    _face_index: Dict[Tuple[int, ...], int] = field(
        init=False, repr=False, compare=False
    )

    def __post_init__(self):
        index = {self._key(face.sign_vector): face.id for face in self.faces}
        object.__setattr__(self, "_face_index", index)

    def _key(self, sign_vector: Dict[int, int]) -> Tuple[int, ...]:
        return tuple(sign_vector[line.id] for line in self.lines)

    @property
    def box_lines(self) -> Tuple[Line2, ...]:
        return box_lines_2d(self.box_half_width)

    @property
    def generator_vertex_count(self) -> int:
        return sum(1 for vertex in self.vertices if vertex.is_generator_vertex)

    def face_for_signs(self, sign_vector: Dict[int, int]) -> Optional[Face2]:
        face_id = self._face_index.get(self._key(sign_vector))
        return None if face_id is None else self.faces[face_id]

    def locate(self, point: Point2) -> Optional[Face2]:
        """
        Face containing ``point`` in its interior, or None when the point lies on a
        line or outside the open box.
        """
        if point.max_abs() >= self.box_half_width:
            return None
        signs = {line.id: side_of_line(point, line) for line in self.lines}
        if 0 in signs.values():
            return None
        return self.face_for_signs(signs)


@dataclass(frozen=True)
class Zone2Report:
    face_ids: FrozenSet[int]
    zone_size: int
    vertex_count: int = 0

    @property
    def face_count(self) -> int:
        return len(self.face_ids)


def _with_ids(lines: Sequence[Line2]) -> Tuple[Line2, ...]:
    lines = tuple(
        line if line.id is not None else line.with_id(index)
        for index, line in enumerate(lines)
    )
    ids = [line.id for line in lines]
    if len(set(ids)) != len(ids) or any(line_id < 0 for line_id in ids):
        raise ValueError(f"Line ids must be unique and non-negative, got {ids}.")
    return lines


def _nearest_to_origin(line: Line2) -> Point2:
    scale = -line.c / (line.a * line.a + line.b * line.b)
    return Point2(scale * line.a, scale * line.b)


def compute_box_half_width_2d(
    lines: Sequence[Line2],
    extras: Sequence[Line2] = (),
    start: Optional[Scalar] = None,
) -> Fraction:
    """
    Half-width W of a square holding every pairwise intersection of ``lines`` and
    ``extras`` strictly inside, crossed by every extra line, with no line through a corner.

    Args:
        lines (Sequence[Line2]): The generators.
        extras (Sequence[Line2]): Query lines that must also meet the generators inside
            and cross the square even when there are no generators.
        start (Scalar, optional): Lower bound for W, e.g. the image of a 3D box.

    Returns:
        Fraction: W = max(start, 1 + largest coordinate), bumped by 1 while a corner is hit.
    """
    members = list(lines) + list(extras)
    half_width = Fraction(1)
    for first, second in combinations(members, 2):
        if det2(first.a, first.b, second.a, second.b) == 0:
            continue
        point = intersect_two_lines(first, second)
        half_width = max(half_width, 1 + point.max_abs())
    for line in extras:
        half_width = max(half_width, 1 + _nearest_to_origin(line).max_abs())
    if start is not None:
        half_width = max(half_width, as_fraction(start))

    for _ in range(MAX_BOX_STEPS):
        if not any(
            line.evaluate(corner) == 0
            for line in members
            for corner in box_corners_2d(half_width)
        ):
            return half_width
        half_width += 1
    raise BoxGenericityViolation(
        f"Every square up to half-width {half_width} has a line through a corner."
    )


def build_arrangement_2d(lines: Sequence[Line2], box_half_width: Scalar) -> Arrangement2:
    """
    Build the clipped arrangement of ``lines`` inside ``[-W, W]^2``.

    Args:
        lines (Sequence[Line2]): Generators in general position. Missing ids are set to
            the list position.
        box_half_width (Scalar): W; every pairwise intersection must lie strictly inside.

    Returns:
        Arrangement2: Vertices, faces with sign vectors and edge counts, and edges.
    """
    lines = _with_ids(lines)
    report = general_position_2d(lines)
    if not report:
        raise NotGeneralPosition(report.describe())

    half_width = as_fraction(box_half_width)
    if half_width <= 0:
        raise BoxTooSmall(f"Box half-width must be positive, got {half_width}.")
    for first, second in combinations(lines, 2):
        point = intersect_two_lines(first, second)
        if point.max_abs() >= half_width:
            raise BoxTooSmall(
                f"Lines {first.id} and {second.id} meet at {point}, not strictly inside the box."
            )
    for line in lines:
        for corner in box_corners_2d(half_width):
            if line.evaluate(corner) == 0:
                raise BoxTooSmall(f"Line {line.id} passes through box corner {corner}.")

    extended = lines + box_lines_2d(half_width)

    vertices: List[Vertex2] = []
    for first, second in combinations(extended, 2):
        if det2(first.a, first.b, second.a, second.b) == 0:
            continue
        point = intersect_two_lines(first, second)
        if point.max_abs() <= half_width:
            vertices.append(Vertex2(point, tuple(sorted((first.id, second.id)))))

    def signs_at(point: Point2) -> Dict[int, int]:
        return {line.id: side_of_line(point, line) for line in extended}

    def key_of(signs: Dict[int, int]) -> Tuple[int, ...]:
        return tuple(signs[line.id] for line in extended)

    face_vertices: Dict[Tuple[int, ...], List[int]] = {}
    for vertex_id, vertex in enumerate(vertices):
        base = signs_at(vertex.point)
        first_id, second_id = vertex.line_ids
        for first_sign in (-1, 1):
            for second_sign in (-1, 1):
                chosen = {first_id: first_sign, second_id: second_sign}
                if any(
                    line_id in BOX_INTERIOR_SIGNS_2D
                    and BOX_INTERIOR_SIGNS_2D[line_id] != value
                    for line_id, value in chosen.items()
                ):
                    continue
                signs = dict(base)
                signs.update(chosen)
                face_vertices.setdefault(key_of(signs), []).append(vertex_id)

    keys = sorted(face_vertices)
    face_ids = {key: face_id for face_id, key in enumerate(keys)}
    edge_counts = [0] * len(keys)

    edges: List[Edge2] = []
    for line in lines:
        on_line = sorted(
            (vertex_id for vertex_id, vertex in enumerate(vertices) if line.id in vertex.line_ids),
            key=lambda vertex_id: line.parameter(vertices[vertex_id].point),
        )
        for start, end in zip(on_line, on_line[1:]):
            midpoint = centroid2([vertices[start].point, vertices[end].point])
            signs = signs_at(midpoint)
            adjacent = []
            for side in (-1, 1):
                signs[line.id] = side
                adjacent.append(face_ids[key_of(signs)])
            for face_id in adjacent:
                edge_counts[face_id] += 1
            edges.append(Edge2(line.id, (start, end), tuple(adjacent)))

    faces: List[Face2] = []
    for key in keys:
        face_id = face_ids[key]
        vertex_ids = tuple(face_vertices[key])
        representative = centroid2(vertices[v].point for v in vertex_ids)
        sign_vector = {line.id: value for line, value in zip(extended, key)}
        assert all(
            side_of_line(representative, line) == sign_vector[line.id] for line in extended
        ), f"Representative point of face {face_id} does not realize its sign vector."
        faces.append(
            Face2(
                id=face_id,
                sign_vector=sign_vector,
                edge_count=edge_counts[face_id],
                representative_point=representative,
                vertex_ids=vertex_ids,
                touches_box=any(
                    not vertices[v].is_generator_vertex for v in vertex_ids
                ),
            )
        )

    logger.debug(
        f"Built 2D arrangement: {len(lines)} lines, {len(vertices)} vertices, "
        f"{len(faces)} faces, {len(edges)} generator edges"
    )
    return Arrangement2(
        lines=lines,
        box_half_width=half_width,
        vertices=tuple(vertices),
        faces=tuple(faces),
        edges=tuple(edges),
    )


def zone_2d(arr: Arrangement2, s: Line2) -> Zone2Report:
    """
    Faces of ``arr`` whose interior is crossed by the query line ``s``.

    The walk sorts the intersections of ``s`` with the generators and the box along
    ``s`` and locates the midpoint of every consecutive pair.
    """
    for line in arr.lines:
        if det2(line.a, line.b, s.a, s.b) == 0:
            raise DegenerateQuery(f"Query line is parallel to line {line.id}.")
    for vertex in arr.vertices:
        if vertex.is_generator_vertex and s.evaluate(vertex.point) == 0:
            raise DegenerateQuery(f"Query line passes through vertex {vertex.point}.")

    half_width = arr.box_half_width
    origin = Point2(0, -s.c / s.b) if s.b != 0 else Point2(-s.c / s.a, 0)
    du, dv = s.direction

    def at(t: Fraction) -> Point2:
        return Point2(origin.u + t * du, origin.v + t * dv)

    low, high = None, None
    for start, step in ((origin.u, du), (origin.v, dv)):
        if step == 0:
            if abs(start) >= half_width:
                raise DegenerateQuery("Query line does not cross the box interior.")
            continue
        bounds = sorted(((-half_width - start) / step, (half_width - start) / step))
        low = bounds[0] if low is None else max(low, bounds[0])
        high = bounds[1] if high is None else min(high, bounds[1])
    if low >= high:
        raise DegenerateQuery("Query line does not cross the box interior.")

    breakpoints = {low, high}
    for line in arr.lines:
        t = -line.evaluate(origin) / (line.a * du + line.b * dv)
        if low < t < high:
            breakpoints.add(t)
    breakpoints = sorted(breakpoints)

    zone_faces = set()
    for start, end in zip(breakpoints, breakpoints[1:]):
        face = arr.locate(at((start + end) / 2))
        assert face is not None, "Zone walk midpoint fell outside every face."
        zone_faces.add(face.id)

    zone_vertices = {
        vertex_id
        for face_id in zone_faces
        for vertex_id in arr.faces[face_id].vertex_ids
        if arr.vertices[vertex_id].is_generator_vertex
    }
    return Zone2Report(
        face_ids=frozenset(zone_faces),
        zone_size=sum(arr.faces[face_id].edge_count for face_id in zone_faces),
        vertex_count=len(zone_vertices),
    )
