from dataclasses import dataclass
from itertools import combinations
from typing import List, Optional, Sequence, Tuple, Union

from geometry.exact import Line2, Plane, cross3, det2, det3, det4

Label = Union[int, str]


@dataclass(frozen=True)
class GeneralPositionReport:
    """
    Outcome of an exhaustive general-position check.

    Attributes:
        ok (bool): True when no violation was found.
        kind (str, optional): ``parallel``, ``concurrent`` (2D), ``common_line``,
            ``no_common_point`` or ``common_point`` (3D).
        ids (tuple): Labels of the offending lines or planes, in input order.
    """

    ok: bool
    kind: Optional[str] = None
    ids: Tuple[Label, ...] = ()

    def __bool__(self) -> bool:
        return self.ok

    def describe(self) -> str:
        if self.ok:
            return "general position"
        return f"{self.kind} {list(self.ids)}"


def _label(item, index: int) -> Label:
    return item.id if item.id is not None else index


def general_position_2d(lines: Sequence[Line2]) -> GeneralPositionReport:
    """
    Check that no two lines are parallel and no three lines are concurrent.

    The first violation in lexicographic order is returned; pairs are checked before triples.
    """
    labels = [_label(line, index) for index, line in enumerate(lines)]

    for i, j in combinations(range(len(lines)), 2):
        if det2(lines[i].a, lines[i].b, lines[j].a, lines[j].b) == 0:
            return GeneralPositionReport(False, "parallel", (labels[i], labels[j]))

    for i, j, k in combinations(range(len(lines)), 3):
        if det3([lines[m].coefficients for m in (i, j, k)]) == 0:
            return GeneralPositionReport(
                False, "concurrent", (labels[i], labels[j], labels[k])
            )

    return GeneralPositionReport(True)


def general_position_3d(
    planes: Sequence[Plane], extra: Optional[Plane] = None
) -> GeneralPositionReport:
    """
    Check that no two planes are parallel, every three planes meet in exactly one point
    and no four planes share a point.

    Args:
        planes (Sequence[Plane]): The generators.
        extra (Plane, optional): A query plane S that takes part in every check; it is
            labelled ``"S"`` in reports.

    Returns:
        GeneralPositionReport: The first violation found, or an ok report.
    """
    members: List[Plane] = list(planes)
    labels: List[Label] = [_label(plane, index) for index, plane in enumerate(planes)]
    if extra is not None:
        members.append(extra)
        labels.append("S")

    for i, j in combinations(range(len(members)), 2):
        if not any(cross3(members[i].normal, members[j].normal)):
            return GeneralPositionReport(False, "parallel", (labels[i], labels[j]))

    for triple in combinations(range(len(members)), 3):
        normals = [members[m].normal for m in triple]
        if det3(normals) != 0:
            continue
        augmented = [members[m].coefficients for m in triple]
        minors = [
            det3([[row[c] for c in columns] for row in augmented])
            for columns in combinations(range(4), 3)
        ]
        kind = "common_line" if not any(minors) else "no_common_point"
        return GeneralPositionReport(False, kind, tuple(labels[m] for m in triple))

    # with every triple nonsingular, a vanishing 4x4 determinant means a shared point
    for quadruple in combinations(range(len(members)), 4):
        if det4([members[m].coefficients for m in quadruple]) == 0:
            return GeneralPositionReport(
                False, "common_point", tuple(labels[m] for m in quadruple)
            )

    return GeneralPositionReport(True)
