"""
Plane arrangements clipped to the bounding box ``[-A, A]^3``, their zones, and the two
derived arrangements used by the zone theorem: A-Q (remove one plane) and L_Q (the
line arrangement a plane Q carries).

Cells are identified by sign vectors. Inside the box every cell is a bounded simple
polytope, so it has a vertex, and the eight sign choices around every vertex of the
extended arrangement (generators plus six box planes) enumerate every cell.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cmp_to_key
from itertools import combinations, product
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from geometry.arrangement2d import Arrangement2, build_arrangement_2d, compute_box_half_width_2d
from geometry.errors import (
    BoxGenericityViolation,
    DegenerateQuery,
    NotGeneralPosition,
    UnknownPlane,
)
from geometry.exact import (
    Line2,
    Plane,
    Point2,
    Point3,
    Scalar,
    as_fraction,
    centroid3,
    cross3,
    sign,
    side_of_plane,
    solve3,
)
from geometry.general_position import general_position_3d

logger = logging.getLogger(__name__)

BOX_PLANE_IDS = (-1, -2, -3, -4, -5, -6)

# increments tried before a box is declared unattainable, e.g. for x = y
MAX_BOX_STEPS = 256

# sign every interior point takes with respect to each box plane
BOX_INTERIOR_SIGNS_3D = {-1: -1, -2: 1, -3: -1, -4: 1, -5: -1, -6: 1}


def box_planes_3d(half_width: Fraction) -> Tuple[Plane, ...]:
    """
    The six planes ``x = A``, ``x = -A``, ``y = A``, ``y = -A``, ``z = A``, ``z = -A``.
    """
    planes = []
    for axis in range(3):
        normal = [0, 0, 0]
        normal[axis] = 1
        planes.append(Plane(*normal, -half_width, id=BOX_PLANE_IDS[2 * axis]))
        planes.append(Plane(*normal, half_width, id=BOX_PLANE_IDS[2 * axis + 1]))
    return tuple(planes)


def box_corners_3d(half_width: Fraction) -> List[Point3]:
    return [
        Point3(sx * half_width, sy * half_width, sz * half_width)
        for sx, sy, sz in product((1, -1), repeat=3)
    ]


@dataclass(frozen=True)
class Vertex3:
    point: Point3
    plane_ids: Tuple[int, int, int]

    @property
    def is_generator_vertex(self) -> bool:
        return all(plane_id >= 0 for plane_id in self.plane_ids)


@dataclass(frozen=True)
class FaceRecord:
    supporting_plane_id: int
    cell_id: int
    vertex_ids: Tuple[int, ...]
    polygon: Tuple[Point3, ...]
    edge_count: int

    @property
    def is_box_face(self) -> bool:
        return self.supporting_plane_id < 0


@dataclass(frozen=True)
class Cell3:
    """
    A cell of the clipped arrangement.

    Attributes:
        v_count, e_count, f_count: Boundary elements including box-supported ones.
        f_real: Faces supported by generator planes only.
    """

    id: int
    sign_vector: Dict[int, int]
    v_count: int
    e_count: int
    f_count: int
    f_real: int
    face_records: Tuple[FaceRecord, ...]
    representative_point: Point3
    vertex_ids: Tuple[int, ...]
    edges: Tuple[Tuple[int, int], ...]

    @property
    def face_plane_ids(self) -> FrozenSet[int]:
        return frozenset(face.supporting_plane_id for face in self.face_records)

    @property
    def generator_face_plane_ids(self) -> FrozenSet[int]:
        return frozenset(
            face.supporting_plane_id for face in self.face_records if not face.is_box_face
        )


@dataclass(frozen=True)
class Arrangement3:
    planes: Tuple[Plane, ...]
    box_half_width: Fraction
    vertices: Tuple[Vertex3, ...]
    cells: Tuple[Cell3, ...]
    _cell_index: Dict[Tuple[int, ...], int] = field(
        init=False, repr=False, compare=False
    )

    def __post_init__(self):
        index = {self._key(cell.sign_vector): cell.id for cell in self.cells}
        object.__setattr__(self, "_cell_index", index)

    def _key(self, sign_vector: Dict[int, int]) -> Tuple[int, ...]:
        return tuple(sign_vector[plane.id] for plane in self.planes)

    @property
    def n(self) -> int:
        return len(self.planes)

    @property
    def plane_ids(self) -> Tuple[int, ...]:
        return tuple(plane.id for plane in self.planes)

    @property
    def box_planes(self) -> Tuple[Plane, ...]:
        return box_planes_3d(self.box_half_width)

    @property
    def extended_planes(self) -> Tuple[Plane, ...]:
        return self.planes + self.box_planes

    @property
    def generator_vertex_count(self) -> int:
        return sum(1 for vertex in self.vertices if vertex.is_generator_vertex)

    def plane(self, plane_id: int) -> Plane:
        for plane in self.planes:
            if plane.id == plane_id:
                return plane
        raise UnknownPlane(f"Plane {plane_id} is not a generator of this arrangement.")

    def cell_for_signs(self, sign_vector: Dict[int, int]) -> Optional[Cell3]:
        cell_id = self._cell_index.get(self._key(sign_vector))
        return None if cell_id is None else self.cells[cell_id]

    def locate(self, point: Point3) -> Optional[Cell3]:
        """
        Cell containing ``point`` in its interior, or None when the point lies on a
        plane or outside the open box.
        """
        if point.max_abs() >= self.box_half_width:
            return None
        signs = {plane.id: side_of_plane(point, plane) for plane in self.planes}
        if 0 in signs.values():
            return None
        return self.cell_for_signs(signs)


@dataclass(frozen=True)
class Zone3Report:
    """
    Attributes:
        cell_ids: Cells whose interior S crosses.
        zone_size: Sum of generator-supported face counts over those cells.
        cell_count: Number of zone cells.
        complexity: Sum of V + E + F (box elements included) over zone cells.
    """

    cell_ids: FrozenSet[int]
    zone_size: int
    cell_count: int
    complexity: int = 0


@dataclass(frozen=True)
class PlaneChart:
    """
    Exact affine chart on a plane Q: the coordinate with the largest normal component
    is solved for, the two remaining coordinates become ``(u, v)``.
    """

    plane: Plane
    solved_axis: int
    free_axes: Tuple[int, int]

    @classmethod
    def for_plane(cls, plane: Plane) -> "PlaneChart":
        normal = plane.normal
        solved_axis = max(range(3), key=lambda axis: (abs(normal[axis]), -axis))
        free_axes = tuple(axis for axis in range(3) if axis != solved_axis)
        return cls(plane, solved_axis, free_axes)

    def to_3d(self, point: Point2) -> Point3:
        normal = self.plane.normal
        i, j = self.free_axes
        coords = [Fraction(0)] * 3
        coords[i] = point.u
        coords[j] = point.v
        coords[self.solved_axis] = -(
            normal[i] * point.u + normal[j] * point.v + self.plane.d
        ) / normal[self.solved_axis]
        return Point3(*coords)

    def to_2d(self, point: Point3) -> Point2:
        coords = point.coords
        return Point2(coords[self.free_axes[0]], coords[self.free_axes[1]])

    def line_of(self, other: Plane) -> Line2:
        """
        The line ``other ∩ Q`` in chart coordinates, carrying ``other``'s id.
        """
        q, p = self.plane.normal, other.normal
        i, j = self.free_axes
        k = self.solved_axis
        ratio = p[k] / q[k]
        return Line2(
            p[i] - ratio * q[i],
            p[j] - ratio * q[j],
            other.d - ratio * self.plane.d,
            id=other.id,
        )


def _with_ids(planes: Sequence[Plane]) -> Tuple[Plane, ...]:
    planes = tuple(
        plane if plane.id is not None else plane.with_id(index)
        for index, plane in enumerate(planes)
    )
    ids = [plane.id for plane in planes]
    if len(set(ids)) != len(ids) or any(plane_id < 0 for plane_id in ids):
        raise ValueError(f"Plane ids must be unique and non-negative, got {ids}.")
    return planes


def _extended_vertices(
    extended: Sequence[Plane], half_width: Fraction
) -> List[Tuple[Point3, Tuple[int, int, int], int]]:
    """
    Every point where three extended planes meet inside the closed box, with the ids of
    the triple and the number of extended planes through the point.
    """
    found = []
    for triple in combinations(extended, 3):
        solution = solve3([p.normal for p in triple], [-p.d for p in triple])
        if solution is None:
            continue
        point = Point3(*solution)
        if point.max_abs() > half_width:
            continue
        incidence = sum(1 for plane in extended if plane.evaluate(point) == 0)
        found.append((point, tuple(sorted(p.id for p in triple)), incidence))
    return found


def box_genericity_violation(
    planes: Sequence[Plane], half_width: Fraction
) -> Optional[str]:
    """
    Describe why the box of half-width ``half_width`` is not generic for ``planes``, or
    return None. Generic means every generator vertex is strictly inside and every point
    of the extended arrangement lies on exactly three extended planes.
    """
    for triple in combinations(planes, 3):
        solution = solve3([p.normal for p in triple], [-p.d for p in triple])
        if solution is not None and Point3(*solution).max_abs() >= half_width:
            return f"vertex of planes {[p.id for p in triple]} is not strictly inside the box"
    for corner in box_corners_3d(half_width):
        for plane in planes:
            if plane.evaluate(corner) == 0:
                return f"plane {plane.id} contains box corner {corner}"
    extended = tuple(planes) + box_planes_3d(half_width)
    for point, plane_ids, incidence in _extended_vertices(extended, half_width):
        if incidence != 3:
            return f"point {point} of planes {list(plane_ids)} lies on {incidence} planes"
    return None


def compute_box_half_width(
    planes: Sequence[Plane], extras: Sequence[Plane] = ()
) -> Fraction:
    """
    Box half-width A exceeding every coordinate of every vertex of ``planes`` and ``extras``.

    Args:
        planes (Sequence[Plane]): The generators.
        extras (Sequence[Plane]): Query planes whose vertices must also be inside.

    Returns:
        Fraction: ``1 + max |coordinate|`` over all nonsingular triples, increased by 1
        until the box is generic for ``planes`` and ``extras``.
    """
    members = tuple(
        plane.with_id(index) for index, plane in enumerate(list(planes) + list(extras))
    )
    half_width = Fraction(1)
    for triple in combinations(members, 3):
        solution = solve3([p.normal for p in triple], [-p.d for p in triple])
        if solution is not None:
            half_width = max(half_width, 1 + Point3(*solution).max_abs())

    for _ in range(MAX_BOX_STEPS):
        violation = box_genericity_violation(members, half_width)
        if violation is None:
            return half_width
        logger.debug(f"Box half-width {half_width} is not generic ({violation}), increasing")
        half_width += 1
    raise BoxGenericityViolation(
        f"No generic box up to half-width {half_width}: {violation}."
    )


def _angular_order(points: Dict[int, Point2]) -> List[int]:
    center_u = sum((p.u for p in points.values()), Fraction(0)) / len(points)
    center_v = sum((p.v for p in points.values()), Fraction(0)) / len(points)

    def half(vertex_id: int) -> int:
        du = points[vertex_id].u - center_u
        dv = points[vertex_id].v - center_v
        return 0 if dv > 0 or (dv == 0 and du > 0) else 1

    def compare(first: int, second: int) -> int:
        first_half, second_half = half(first), half(second)
        if first_half != second_half:
            return first_half - second_half
        a, b = points[first], points[second]
        cross = (a.u - center_u) * (b.v - center_v) - (a.v - center_v) * (b.u - center_u)
        return -sign(cross)

    return sorted(points, key=cmp_to_key(compare))


def build_arrangement_3d(planes: Sequence[Plane], box_half_width: Scalar) -> Arrangement3:
    """
    Build the full incidence structure of ``planes`` inside ``[-A, A]^3``.

    Args:
        planes (Sequence[Plane]): Generators in general position. Missing ids are set to
            the list position.
        box_half_width (Scalar): A, generic for ``planes``
            (see ``compute_box_half_width``).

    Returns:
        Arrangement3: Vertices and cells with per-cell counts and face records.
    """
    planes = _with_ids(planes)
    report = general_position_3d(planes)
    if not report:
        raise NotGeneralPosition(report.describe())
    half_width = as_fraction(box_half_width)
    if half_width <= 0:
        raise BoxGenericityViolation(f"Box half-width must be positive, got {half_width}.")
    violation = box_genericity_violation(planes, half_width)
    if violation is not None:
        raise BoxGenericityViolation(violation)

    extended = planes + box_planes_3d(half_width)
    vertices = tuple(
        Vertex3(point, plane_ids)
        for point, plane_ids, _ in _extended_vertices(extended, half_width)
    )
    vertex_signs = [
        {plane.id: side_of_plane(vertex.point, plane) for plane in extended}
        for vertex in vertices
    ]

    def key_of(signs: Dict[int, int]) -> Tuple[int, ...]:
        return tuple(signs[plane.id] for plane in extended)

    cell_vertices: Dict[Tuple[int, ...], List[int]] = {}
    for vertex_id, vertex in enumerate(vertices):
        for choice in product((-1, 1), repeat=3):
            chosen = dict(zip(vertex.plane_ids, choice))
            if any(
                plane_id in BOX_INTERIOR_SIGNS_3D and BOX_INTERIOR_SIGNS_3D[plane_id] != value
                for plane_id, value in chosen.items()
            ):
                continue
            signs = dict(vertex_signs[vertex_id])
            signs.update(chosen)
            cell_vertices.setdefault(key_of(signs), []).append(vertex_id)

    cells = []
    for cell_id, key in enumerate(sorted(cell_vertices)):
        sign_vector = {plane.id: value for plane, value in zip(extended, key)}
        cells.append(
            _build_cell(cell_id, sign_vector, tuple(cell_vertices[key]), vertices, extended)
        )

    logger.debug(
        f"Built 3D arrangement: {len(planes)} planes, A={half_width}, "
        f"{len(vertices)} vertices, {len(cells)} cells"
    )
    return Arrangement3(
        planes=planes,
        box_half_width=half_width,
        vertices=vertices,
        cells=tuple(cells),
    )


def _build_cell(
    cell_id: int,
    sign_vector: Dict[int, int],
    vertex_ids: Tuple[int, ...],
    vertices: Sequence[Vertex3],
    extended: Sequence[Plane],
) -> Cell3:
    representative = centroid3(vertices[v].point for v in vertex_ids)
    assert all(
        side_of_plane(representative, plane) == sign_vector[plane.id] for plane in extended
    ), f"Representative point of cell {cell_id} does not realize its sign vector."

    edges = []
    for first, second in combinations(vertex_ids, 2):
        common = set(vertices[first].plane_ids) & set(vertices[second].plane_ids)
        if len(common) != 2:
            continue
        midpoint = centroid3([vertices[first].point, vertices[second].point])
        if all(
            side_of_plane(midpoint, plane) in (0, sign_vector[plane.id])
            for plane in extended
        ):
            edges.append((first, second))

    face_plane_ids = sorted(
        {plane_id for v in vertex_ids for plane_id in vertices[v].plane_ids},
        key=lambda plane_id: (plane_id < 0, abs(plane_id)),
    )
    face_records = []
    for plane_id in face_plane_ids:
        on_plane = [v for v in vertex_ids if plane_id in vertices[v].plane_ids]
        plane = next(p for p in extended if p.id == plane_id)
        chart = PlaneChart.for_plane(plane)
        cycle = tuple(_angular_order({v: chart.to_2d(vertices[v].point) for v in on_plane}))
        edge_count = sum(
            1
            for first, second in edges
            if plane_id in vertices[first].plane_ids and plane_id in vertices[second].plane_ids
        )
        assert edge_count == len(cycle) >= 3, (
            f"Face on plane {plane_id} of cell {cell_id} has {len(cycle)} vertices "
            f"but {edge_count} edges."
        )
        face_records.append(
            FaceRecord(
                supporting_plane_id=plane_id,
                cell_id=cell_id,
                vertex_ids=cycle,
                polygon=tuple(vertices[v].point for v in cycle),
                edge_count=edge_count,
            )
        )

    return Cell3(
        id=cell_id,
        sign_vector=sign_vector,
        v_count=len(vertex_ids),
        e_count=len(edges),
        f_count=len(face_records),
        f_real=sum(1 for face in face_records if not face.is_box_face),
        face_records=tuple(face_records),
        representative_point=representative,
        vertex_ids=vertex_ids,
        edges=tuple(edges),
    )


def check_query_plane(arr: Arrangement3, s: Plane) -> List[int]:
    """
    Validate ``s`` as a zone query and return the side of every vertex of ``arr``.
    """
    for plane in arr.planes:
        if not any(cross3(plane.normal, s.normal)):
            raise DegenerateQuery(f"Query plane is parallel to plane {plane.id}.")
    sides = [side_of_plane(vertex.point, s) for vertex in arr.vertices]
    for vertex, side in zip(arr.vertices, sides):
        if side == 0:
            raise DegenerateQuery(
                f"Query plane passes through vertex {vertex.point} of planes {list(vertex.plane_ids)}."
            )
    return sides


def zone_3d(arr: Arrangement3, s: Plane) -> Zone3Report:
    """
    Cells of ``arr`` whose interior is crossed by ``s``.

    A closed bounded cell with no vertex on ``s`` is crossed iff it has vertices on
    both sides of ``s``.
    """
    sides = check_query_plane(arr, s)
    zone_cells = [
        cell
        for cell in arr.cells
        if {sides[v] for v in cell.vertex_ids} == {-1, 1}
    ]
    return Zone3Report(
        cell_ids=frozenset(cell.id for cell in zone_cells),
        zone_size=sum(cell.f_real for cell in zone_cells),
        cell_count=len(zone_cells),
        complexity=sum(cell.v_count + cell.e_count + cell.f_count for cell in zone_cells),
    )


def remove_plane(arr: Arrangement3, plane_id: int) -> Arrangement3:
    """
    The arrangement A-Q over the remaining generators, in the same box so every cell Q
    does not cut is reproduced unchanged.
    """
    arr.plane(plane_id)
    remaining = [plane for plane in arr.planes if plane.id != plane_id]
    return build_arrangement_3d(remaining, arr.box_half_width)


def induced_arrangement(
    arr: Arrangement3, plane_id: int, extras: Sequence[Plane] = ()
) -> Tuple[Arrangement2, PlaneChart]:
    """
    The line arrangement L_Q that the other generators cut out of plane Q.

    Args:
        arr (Arrangement3): The arrangement containing Q.
        plane_id (int): Id of Q.
        extras (Sequence[Plane]): Query planes whose traces on Q must avoid the
            corners of the 2D box.

    Returns:
        Tuple[Arrangement2, PlaneChart]: L_Q, whose line ids are the ids of the cutting
        planes, and the chart mapping between Q and the 2D coordinates.
    """
    chart = PlaneChart.for_plane(arr.plane(plane_id))
    lines = [chart.line_of(plane) for plane in arr.planes if plane.id != plane_id]
    extra_lines = [chart.line_of(plane) for plane in extras]
    half_width = compute_box_half_width_2d(lines, extra_lines, start=arr.box_half_width)
    return build_arrangement_2d(lines, half_width), chart
