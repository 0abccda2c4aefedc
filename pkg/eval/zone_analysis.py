"""
Instance-level verification of the 3D zone theorem's counting argument.

For an arrangement A, a query plane S and a generator Q, the pairs (f, C) with C a zone
cell of A and f a generator face of C off Q are bounded by the zone size of S in A-Q
plus the zone size of S ∩ Q in the line arrangement L_Q. Summing over Q gives the
recurrence that yields the quadratic bound.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Optional, Sequence, Tuple

from geometry.arrangement2d import zone_2d
from geometry.arrangement3d import (
    Arrangement3,
    Zone3Report,
    build_arrangement_3d,
    compute_box_half_width,
    induced_arrangement,
    remove_plane,
    zone_3d,
)
from geometry.errors import DegenerateInstance, GeometryError, VerificationError
from geometry.exact import Plane
from geometry.general_position import general_position_2d, general_position_3d

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CaseBreakdown:
    """
    How the pairs (f, C) of one Q split over the cases of the counting argument.

    Attributes:
        uncut_pairs: Pairs from zone cells that Q does not cut.
        one_side_pairs: Pairs from halves of cut cells whose other half is not in the zone.
        both_split_faces: Faces cut by Q of cells whose two halves are both in the zone;
            each contributes two pairs and one L_Q zone edge.
        both_unsplit_pairs: Pairs from faces not cut by Q of cells whose two halves are
            both in the zone.
    """

    uncut_pairs: int = 0
    one_side_pairs: int = 0
    both_split_faces: int = 0
    both_unsplit_pairs: int = 0

    @property
    def pair_total(self) -> int:
        return (
            self.uncut_pairs
            + self.one_side_pairs
            + 2 * self.both_split_faces
            + self.both_unsplit_pairs
        )


@dataclass(frozen=True)
class Theorem1Record:
    q_id: int
    n: int
    lhs_pairs: int
    rhs_zone_a_minus_q: int
    rhs_zone_lq: int
    case_breakdown: CaseBreakdown
    lq_face_count: int

    @property
    def rhs(self) -> int:
        return self.rhs_zone_a_minus_q + self.rhs_zone_lq

    @property
    def ok(self) -> bool:
        return self.lhs_pairs <= self.rhs


@dataclass(frozen=True)
class RecurrenceRecord:
    """
    Attributes:
        lhs: (n - 1) * zone_size.
        rhs: Sum over Q of both right-hand zone sizes.
        sum_lhs_pairs: Sum over Q of the pair counts; equals ``lhs`` exactly.
        f_value: zone_size / n.
        c_estimate: Sum over Q of the L_Q zone sizes divided by n(n - 1).
        f_bound: Mean over Q of zone(A-Q) / (n - 1), plus ``c_estimate``.
    """

    n: int
    zone_size: int
    per_q: Tuple[Theorem1Record, ...]
    lhs: int
    rhs: int
    sum_lhs_pairs: int
    f_value: Fraction
    c_estimate: Fraction
    f_bound: Fraction

    @property
    def ok(self) -> bool:
        return self.lhs == self.sum_lhs_pairs and self.lhs <= self.rhs


def count_pairs(
    arr: Arrangement3, s: Plane, q_id: int, zone: Optional[Zone3Report] = None
) -> int:
    """
    Number of pairs (f, C): C a cell of the zone of ``s``, f a generator face of C whose
    supporting plane is not Q. Box faces never count.
    """
    arr.plane(q_id)
    zone = zone if zone is not None else zone_3d(arr, s)
    return sum(
        1
        for cell_id in zone.cell_ids
        for face in arr.cells[cell_id].face_records
        if not face.is_box_face and face.supporting_plane_id != q_id
    )


def _case_breakdown(arr: Arrangement3, zone: Zone3Report, q_id: int) -> CaseBreakdown:
    uncut = one_side = split_halves = unsplit = 0
    for cell_id in sorted(zone.cell_ids):
        cell = arr.cells[cell_id]
        faces_off_q = cell.generator_face_plane_ids - {q_id}
        flipped = dict(cell.sign_vector)
        flipped[q_id] = -flipped[q_id]
        partner = arr.cell_for_signs(flipped)
        if partner is None:
            uncut += len(faces_off_q)
        elif partner.id not in zone.cell_ids:
            one_side += len(faces_off_q)
        else:
            for plane_id in faces_off_q:
                if plane_id in partner.generator_face_plane_ids:
                    split_halves += 1
                else:
                    unsplit += 1
    # a split face is seen once from each half
    if split_halves % 2:
        raise VerificationError(
            f"Q={q_id}: split faces of cut cells do not pair up ({split_halves} halves)."
        )
    return CaseBreakdown(uncut, one_side, split_halves // 2, unsplit)


def _check_unchanged_cells(
    arr: Arrangement3, a_minus_q: Arrangement3, zone: Zone3Report, q_id: int
) -> None:
    for cell_id in zone.cell_ids:
        cell = arr.cells[cell_id]
        flipped = dict(cell.sign_vector)
        flipped[q_id] = -flipped[q_id]
        if arr.cell_for_signs(flipped) is not None:
            continue
        merged = a_minus_q.cell_for_signs(cell.sign_vector)
        if merged is None or (merged.v_count, merged.e_count, merged.f_count) != (
            cell.v_count,
            cell.e_count,
            cell.f_count,
        ):
            raise VerificationError(
                f"Q={q_id}: cell {cell_id} is not cut by Q but changes in A-Q."
            )


def verify_theorem1(
    planes: Sequence[Plane],
    s: Plane,
    q_id: int,
    arr: Optional[Arrangement3] = None,
    zone: Optional[Zone3Report] = None,
) -> Theorem1Record:
    """
    Build A, A-Q and L_Q for one (A, S, Q) instance and check the pair-counting inequality.

    Args:
        planes (Sequence[Plane]): Generators of A.
        s (Plane): Query plane, in general position with ``planes``.
        q_id (int): Id of the removed plane Q.
        arr (Arrangement3, optional): A prebuilt A whose box was computed with S included.
        zone (Zone3Report, optional): The zone of S in ``arr``, if already computed.

    Returns:
        Theorem1Record: Both sides of the inequality and the case breakdown.
    """
    try:
        if arr is None:
            report = general_position_3d(planes, s)
            if not report:
                raise DegenerateInstance(f"general position violated: {report.describe()}")
            arr = build_arrangement_3d(planes, compute_box_half_width(planes, [s]))
        zone = zone if zone is not None else zone_3d(arr, s)
        a_minus_q = remove_plane(arr, q_id)
        zone_a_minus_q = zone_3d(a_minus_q, s)
        lq, chart = induced_arrangement(arr, q_id, extras=[s])
        zone_lq = zone_2d(lq, chart.line_of(s))
    except DegenerateInstance:
        raise
    except GeometryError as error:
        raise DegenerateInstance(f"Q={q_id}: {error}") from error

    n = arr.n
    lhs = count_pairs(arr, s, q_id, zone)
    breakdown = _case_breakdown(arr, zone, q_id)
    record = Theorem1Record(
        q_id=q_id,
        n=n,
        lhs_pairs=lhs,
        rhs_zone_a_minus_q=zone_a_minus_q.zone_size,
        rhs_zone_lq=zone_lq.zone_size,
        case_breakdown=breakdown,
        lq_face_count=len(lq.faces),
    )
    logger.debug(f"Theorem 1 record: {record}")

    if not general_position_2d(lq.lines):
        raise VerificationError(f"Q={q_id}: L_Q is not in general position.")
    expected_faces = 1 + (n - 1) + comb(n - 1, 2)
    if len(lq.faces) != expected_faces:
        raise VerificationError(
            f"Q={q_id}: L_Q has {len(lq.faces)} faces, expected {expected_faces}."
        )
    if breakdown.pair_total != lhs:
        raise VerificationError(
            f"Q={q_id}: case breakdown sums to {breakdown.pair_total}, pair count is {lhs}."
        )
    if breakdown.both_split_faces > zone_lq.zone_size:
        raise VerificationError(
            f"Q={q_id}: {breakdown.both_split_faces} split faces exceed the L_Q zone size "
            f"{zone_lq.zone_size}."
        )
    _check_unchanged_cells(arr, a_minus_q, zone, q_id)
    if not record.ok:
        raise VerificationError(
            f"Q={q_id}: {lhs} pairs exceed zone(A-Q) + zone(L_Q) = "
            f"{record.rhs_zone_a_minus_q} + {record.rhs_zone_lq}."
        )
    return record


def verify_recurrence(
    planes: Sequence[Plane], s: Plane, arr: Optional[Arrangement3] = None
) -> RecurrenceRecord:
    """
    Run ``verify_theorem1`` for every generator Q and check the summed inequality
    (n - 1) |zone(S)| <= sum over Q of (|zone_{A-Q}(S)| + |zone_{L_Q}(S ∩ Q)|).
    """
    if arr is None:
        report = general_position_3d(planes, s)
        if not report:
            raise DegenerateInstance(f"general position violated: {report.describe()}")
        arr = build_arrangement_3d(planes, compute_box_half_width(planes, [s]))
    try:
        zone = zone_3d(arr, s)
    except GeometryError as error:
        raise DegenerateInstance(str(error)) from error

    n = arr.n
    per_q = tuple(
        verify_theorem1(arr.planes, s, plane.id, arr=arr, zone=zone) for plane in arr.planes
    )
    lhs = (n - 1) * zone.zone_size if n else 0
    rhs = sum(record.rhs for record in per_q)
    sum_lhs_pairs = sum(record.lhs_pairs for record in per_q)
    pairs_of_cells = n * (n - 1)
    c_estimate = (
        Fraction(sum(record.rhs_zone_lq for record in per_q), pairs_of_cells)
        if pairs_of_cells
        else Fraction(0)
    )
    f_bound = (
        Fraction(sum(record.rhs_zone_a_minus_q for record in per_q), pairs_of_cells)
        + c_estimate
        if pairs_of_cells
        else Fraction(0)
    )
    record = RecurrenceRecord(
        n=n,
        zone_size=zone.zone_size,
        per_q=per_q,
        lhs=lhs,
        rhs=rhs,
        sum_lhs_pairs=sum_lhs_pairs,
        f_value=Fraction(zone.zone_size, n) if n else Fraction(0),
        c_estimate=c_estimate,
        f_bound=f_bound,
    )

    if lhs != sum_lhs_pairs:
        raise VerificationError(
            f"Sum over Q of pair counts is {sum_lhs_pairs}, expected (n-1)*zone = {lhs}."
        )
    if lhs > rhs:
        raise VerificationError(f"Recurrence violated: (n-1)*zone = {lhs} > {rhs}.")
    return record
