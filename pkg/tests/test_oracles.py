from fractions import Fraction

import pytest

from eval.census import expected_cell_count
from eval.oracles import (
    cell_meets_plane,
    first_zone_disagreement,
    fourier_motzkin_feasible,
    locate_samples,
    sample_points_on_plane,
    sign_vector_census_2d,
    sign_vector_census_3d,
    zone_by_feasibility,
)
from geometry.arrangement3d import build_arrangement_3d, compute_box_half_width, zone_3d
from geometry.exact import side_of_plane
from instances.generation import generate_planes
from instances.random_source import SplitMix64

ONE = Fraction(1)


def test_fourier_motzkin():
    # x > 0 and 1 - x > 0
    assert fourier_motzkin_feasible([((ONE,), Fraction(0), True), ((-ONE,), ONE, True)])
    # x > 0 and -x > 0
    assert not fourier_motzkin_feasible([((ONE,), Fraction(0), True), ((-ONE,), Fraction(0), True)])
    # x >= 0 and -x >= 0
    assert fourier_motzkin_feasible([((ONE,), Fraction(0), False), ((-ONE,), Fraction(0), False)])
    # x > 0 and -x >= 0
    assert not fourier_motzkin_feasible([((ONE,), Fraction(0), True), ((-ONE,), Fraction(0), False)])
    assert fourier_motzkin_feasible([])


def test_fourier_motzkin_two_variables():
    # x > 0, y > 0, x + y < 1 is a triangle; adding x + y > 2 empties it
    triangle = [
        ((ONE, Fraction(0)), Fraction(0), True),
        ((Fraction(0), ONE), Fraction(0), True),
        ((-ONE, -ONE), ONE, True),
    ]
    assert fourier_motzkin_feasible(triangle)
    assert not fourier_motzkin_feasible(triangle + [((ONE, ONE), Fraction(-2), True)])


def test_zone_by_feasibility_matches_zone(octant_arrangement, octant_query):
    zone = zone_3d(octant_arrangement, octant_query)
    assert zone_by_feasibility(octant_arrangement, octant_query) == set(zone.cell_ids)
    missed = octant_arrangement.cell_for_signs({0: -1, 1: -1, 2: -1})
    assert not cell_meets_plane(octant_arrangement, missed, octant_query)


def test_samples_lie_on_plane_inside_box(octant_arrangement, octant_query):
    points = sample_points_on_plane(
        octant_query, octant_arrangement.box_half_width, 10, SplitMix64(3)
    )
    assert len(points) == 10
    for point in points:
        assert side_of_plane(point, octant_query) == 0
        assert point.max_abs() < octant_arrangement.box_half_width
    zone = zone_3d(octant_arrangement, octant_query)
    assert locate_samples(octant_arrangement, points) <= set(zone.cell_ids)


def test_first_zone_disagreement(octant_arrangement, octant_query):
    zone = zone_3d(octant_arrangement, octant_query)
    assert first_zone_disagreement(
        octant_arrangement, octant_query, set(zone.cell_ids), SplitMix64(5)
    ) is None
    assert first_zone_disagreement(
        octant_arrangement, octant_query, set(zone.cell_ids) - {min(zone.cell_ids)}, SplitMix64(5)
    ) is not None


def test_census(octant_planes, axes_lines):
    assert len(sign_vector_census_3d(octant_planes, Fraction(1))) == 8
    assert len(sign_vector_census_2d(axes_lines, Fraction(10))) == 4


@pytest.mark.parametrize("n, trial", [(4, 0), (5, 1), (6, 2), (7, 3)])
def test_oracles_agree_on_random_instances(n, trial):
    planes, s = generate_planes(n, SplitMix64.for_trial(23, n, trial), 20, with_query=True)
    arr = build_arrangement_3d(planes, compute_box_half_width(planes, [s]))
    zone = zone_3d(arr, s)
    assert first_zone_disagreement(arr, s, set(zone.cell_ids), SplitMix64(trial)) is None
    assert zone_by_feasibility(arr, s) == set(zone.cell_ids)

    built = {tuple(cell.sign_vector[p.id] for p in arr.planes) for cell in arr.cells}
    assert len(built) == expected_cell_count(n)
    assert sign_vector_census_3d(arr.planes, arr.box_half_width) == built
