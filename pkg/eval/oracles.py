"""
Brute-force oracles, independent of the arrangement builders, used to cross-check them.
"""

from fractions import Fraction
from itertools import combinations, product
from typing import List, Optional, Sequence, Set, Tuple

from geometry.arrangement2d import box_lines_2d
from geometry.arrangement3d import Arrangement3, Cell3, PlaneChart, box_planes_3d
from geometry.exact import Line2, Plane, Point2, Point3, det2, sign, solve3
from instances.random_source import SplitMix64

# (coefficients, constant, strict): coefficients . x + constant > 0 (strict) or >= 0
Inequality = Tuple[Tuple[Fraction, ...], Fraction, bool]


def _grid(half_width: Fraction, resolution: int) -> List[Fraction]:
    step = 2 * half_width / resolution
    return [-half_width + (k + Fraction(1, 2)) * step for k in range(resolution)]


def _perturbation_scale(values: Sequence[Fraction], rates: Sequence[Fraction]) -> Fraction:
    """
    Largest-safe step (halved) along a direction before any non-supporting sign flips.
    """
    scale = Fraction(1)
    for value, rate in zip(values, rates):
        if rate != 0 and value != 0:
            scale = min(scale, abs(value) / abs(rate))
    return scale / 2


def sign_vector_census_2d(
    lines: Sequence[Line2], half_width: Fraction, resolution: int = 24
) -> Set[Tuple[int, ...]]:
    """
    Distinct generator sign vectors realized inside the open square, from the midpoints
    of a regular grid plus points pushed off every vertex into each of its four quadrants.
    """
    extended = list(lines) + list(box_lines_2d(half_width))
    samples: List[Point2] = [
        Point2(u, v) for u in _grid(half_width, resolution) for v in _grid(half_width, resolution)
    ]
    for first, second in combinations(extended, 2):
        determinant = det2(first.a, first.b, second.a, second.b)
        if determinant == 0:
            continue
        u = det2(-first.c, first.b, -second.c, second.b) / determinant
        v = det2(first.a, -first.c, second.a, -second.c) / determinant
        vertex = Point2(u, v)
        if vertex.max_abs() > half_width:
            continue
        others = [line for line in extended if line is not first and line is not second]
        for targets in product((-1, 1), repeat=2):
            du = det2(targets[0], first.b, targets[1], second.b) / determinant
            dv = det2(first.a, targets[0], second.a, targets[1]) / determinant
            scale = _perturbation_scale(
                [line.evaluate(vertex) for line in others],
                [line.a * du + line.b * dv for line in others],
            )
            samples.append(Point2(u + scale * du, v + scale * dv))

    census = set()
    for point in samples:
        if point.max_abs() >= half_width:
            continue
        signs = tuple(sign(line.evaluate(point)) for line in lines)
        if 0 not in signs:
            census.add(signs)
    return census


def sign_vector_census_3d(
    planes: Sequence[Plane], half_width: Fraction, resolution: int = 8
) -> Set[Tuple[int, ...]]:
    """
    3D analogue of ``sign_vector_census_2d``: grid midpoints plus points pushed off every
    extended vertex into each of its eight octants.
    """
    extended = list(planes) + list(box_planes_3d(half_width))
    grid = _grid(half_width, resolution)
    samples: List[Point3] = [Point3(x, y, z) for x in grid for y in grid for z in grid]
    for triple in combinations(extended, 3):
        rows = [p.normal for p in triple]
        solution = solve3(rows, [-p.d for p in triple])
        if solution is None:
            continue
        vertex = Point3(*solution)
        if vertex.max_abs() > half_width:
            continue
        others = [plane for plane in extended if all(plane is not p for p in triple)]
        for targets in product((-1, 1), repeat=3):
            direction = solve3(rows, [Fraction(t) for t in targets])
            scale = _perturbation_scale(
                [plane.evaluate(vertex) for plane in others],
                [sum(n * d for n, d in zip(plane.normal, direction)) for plane in others],
            )
            samples.append(vertex + tuple(scale * d for d in direction))

    census = set()
    for point in samples:
        if point.max_abs() >= half_width:
            continue
        signs = tuple(sign(plane.evaluate(point)) for plane in planes)
        if 0 not in signs:
            census.add(signs)
    return census


def sample_points_on_plane(
    s: Plane, half_width: Fraction, count: int, rng: SplitMix64, denominator: int = 997
) -> List[Point3]:
    """
    Up to ``count`` random exact points of ``s`` strictly inside the box.
    """
    chart = PlaneChart.for_plane(s)
    scale = int(half_width * denominator)
    points: List[Point3] = []
    for _ in range(100 * count):
        if len(points) == count:
            break
        point = chart.to_3d(
            Point2(
                Fraction(rng.randint(-scale, scale), denominator),
                Fraction(rng.randint(-scale, scale), denominator),
            )
        )
        if point.max_abs() < half_width:
            points.append(point)
    return points


def locate_samples(arr: Arrangement3, points: Sequence[Point3]) -> Set[int]:
    """
    Cells containing the given points; points on a generator are skipped.
    """
    located = set()
    for point in points:
        cell = arr.locate(point)
        if cell is not None:
            located.add(cell.id)
    return located


def fourier_motzkin_feasible(inequalities: Sequence[Inequality]) -> bool:
    """
    Exact feasibility of a system of strict and non-strict linear inequalities by
    Fourier-Motzkin elimination.
    """
    system = [(tuple(coeffs), Fraction(constant), strict) for coeffs, constant, strict in inequalities]
    if not system:
        return True
    variables = len(system[0][0])
    for var in range(variables):
        upper, lower, rest = [], [], []
        for row in system:
            coefficient = row[0][var]
            if coefficient > 0:
                lower.append(row)
            elif coefficient < 0:
                upper.append(row)
            else:
                rest.append(row)
        for low_coeffs, low_const, low_strict in lower:
            for up_coeffs, up_const, up_strict in upper:
                a, b = low_coeffs[var], -up_coeffs[var]
                rest.append(
                    (
                        tuple(b * x + a * y for x, y in zip(low_coeffs, up_coeffs)),
                        b * low_const + a * up_const,
                        low_strict or up_strict,
                    )
                )
        system = rest
    return all(constant > 0 if strict else constant >= 0 for _, constant, strict in system)


def _affine_in_chart(plane: Plane, chart: PlaneChart) -> Tuple[Tuple[Fraction, Fraction], Fraction]:
    origin = plane.evaluate(chart.to_3d(Point2(0, 0)))
    du = plane.evaluate(chart.to_3d(Point2(1, 0))) - origin
    dv = plane.evaluate(chart.to_3d(Point2(0, 1))) - origin
    return (du, dv), origin


def cell_meets_plane(arr: Arrangement3, cell: Cell3, s: Plane) -> bool:
    """
    Whether ``s`` has a point in the open cell: feasibility of the cell's strict sign
    constraints restricted to ``s``.
    """
    chart = PlaneChart.for_plane(s)
    inequalities: List[Inequality] = []
    for plane in arr.extended_planes:
        coeffs, constant = _affine_in_chart(plane, chart)
        side = cell.sign_vector[plane.id]
        inequalities.append(
            (tuple(side * c for c in coeffs), side * constant, True)
        )
    return fourier_motzkin_feasible(inequalities)


def zone_by_feasibility(arr: Arrangement3, s: Plane) -> Set[int]:
    return {cell.id for cell in arr.cells if cell_meets_plane(arr, cell, s)}


def first_zone_disagreement(
    arr: Arrangement3,
    s: Plane,
    zone_cell_ids: Set[int],
    rng: SplitMix64,
    samples: int = 10,
) -> Optional[str]:
    """
    Compare a reported zone with both oracles; return a description of the first
    disagreement or None.
    """
    located = locate_samples(arr, sample_points_on_plane(s, arr.box_half_width, samples, rng))
    missing = located - set(zone_cell_ids)
    if missing:
        return f"sampled points of S lie in cells {sorted(missing)} outside the reported zone"
    feasible = zone_by_feasibility(arr, s)
    if feasible != set(zone_cell_ids):
        return (
            f"feasibility oracle zone {sorted(feasible)} differs from reported "
            f"{sorted(zone_cell_ids)}"
        )
    return None
