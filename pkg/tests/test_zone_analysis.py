from fractions import Fraction

import pytest

from eval.zone_analysis import count_pairs, verify_recurrence, verify_theorem1
from geometry.arrangement3d import build_arrangement_3d
from geometry.errors import DegenerateInstance, UnknownPlane
from geometry.exact import Plane
from instances.generation import generate_planes
from instances.random_source import SplitMix64


def test_count_pairs_octants(octant_arrangement, octant_query):
    assert count_pairs(octant_arrangement, octant_query, 2) == 14
    with pytest.raises(UnknownPlane):
        count_pairs(octant_arrangement, octant_query, 5)


def test_count_pairs_single_plane():
    arr = build_arrangement_3d([Plane(0, 0, 1, 0)], 1)
    assert count_pairs(arr, Plane(1, 0, 0, 0), 0) == 0


def test_theorem1_octants(octant_planes, octant_query):
    record = verify_theorem1(octant_planes, octant_query, 2)
    assert record.lhs_pairs == 14
    assert record.rhs_zone_a_minus_q == 8
    assert record.rhs_zone_lq == 6
    assert record.ok
    assert record.lq_face_count == 4

    breakdown = record.case_breakdown
    assert breakdown.uncut_pairs == 0
    assert breakdown.one_side_pairs == 2
    assert breakdown.both_split_faces == 6
    assert breakdown.both_unsplit_pairs == 0
    assert breakdown.pair_total == record.lhs_pairs


def test_theorem1_reuses_prebuilt_arrangement(octant_planes, octant_query, octant_arrangement):
    fresh = verify_theorem1(octant_planes, octant_query, 0)
    reused = verify_theorem1(octant_planes, octant_query, 0, arr=octant_arrangement)
    assert fresh == reused


def test_theorem1_single_plane():
    record = verify_theorem1([Plane(0, 0, 1, 0, id=0)], Plane(1, 0, 0, 0), 0)
    assert record.lhs_pairs == 0
    assert record.ok


def test_theorem1_rejects_degenerate_query(octant_planes):
    with pytest.raises(DegenerateInstance):
        verify_theorem1(octant_planes, Plane(1, 1, 1, 0), 0)


def test_recurrence_octants(octant_planes, octant_query):
    record = verify_recurrence(octant_planes, octant_query)
    assert record.zone_size == 21
    assert record.lhs == 42
    assert record.sum_lhs_pairs == 42
    assert record.rhs == 42
    assert record.ok
    assert record.f_value == 7
    assert record.c_estimate == 3
    assert record.f_bound == 7
    assert [r.q_id for r in record.per_q] == [0, 1, 2]


def test_recurrence_single_plane():
    record = verify_recurrence([Plane(0, 0, 1, 0, id=0)], Plane(1, 0, 0, 0))
    assert record.lhs == 0
    assert record.ok


def test_single_plane_with_query_outside_the_box():
    record = verify_recurrence([Plane(0, 0, 1, 0, id=0)], Plane(1, 1, 0, -100))
    assert (record.zone_size, record.lhs, record.rhs) == (0, 0, 0)
    assert record.per_q[0].rhs_zone_lq == 0
    assert record.per_q[0].lq_face_count == 1
    assert record.ok


@pytest.mark.parametrize("trial", range(20))
def test_random_single_plane_recurrence(trial):
    planes, s = generate_planes(1, SplitMix64.for_trial(0, 1, trial), 50, with_query=True)
    record = verify_recurrence(planes, s)
    assert record.lhs == record.sum_lhs_pairs == 0
    assert record.per_q[0].lq_face_count == 1
    assert record.ok


@pytest.mark.parametrize("n, trial", [(4, 0), (5, 1), (6, 0)])
def test_random_instances_satisfy_theorem1(n, trial):
    planes, s = generate_planes(n, SplitMix64.for_trial(11, n, trial), 20, with_query=True)
    record = verify_recurrence(planes, s)
    assert len(record.per_q) == n
    assert all(r.ok for r in record.per_q)
    assert record.lhs <= record.rhs
    assert record.f_value == Fraction(record.zone_size, n)
