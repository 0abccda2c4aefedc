import logging
from typing import List, Optional, Tuple

from geometry.arrangement2d import compute_box_half_width_2d
from geometry.arrangement3d import PlaneChart, compute_box_half_width
from geometry.errors import BoxGenericityViolation, GenerationExhausted
from geometry.exact import Line2, Plane
from geometry.general_position import general_position_2d, general_position_3d
from instances.random_source import SplitMix64

logger = logging.getLogger(__name__)

MAX_ATTEMPTS = 10_000


def _random_plane(rng: SplitMix64, coefficient_bound: int) -> Optional[Plane]:
    a, b, c, d = (rng.rational(coefficient_bound) for _ in range(4))
    if a == b == c == 0:
        return None
    return Plane(a, b, c, d)


def _random_line(rng: SplitMix64, coefficient_bound: int) -> Optional[Line2]:
    a, b, c = (rng.rational(coefficient_bound) for _ in range(3))
    if a == b == 0:
        return None
    return Line2(a, b, c)


def _off_origin_planes(members: List[Plane]) -> bool:
    """
    No plane through the origin, and no trace of one plane on another through the origin
    of that plane's chart. Instances failing this can meet box corners at every box size.
    """
    if any(plane.d == 0 for plane in members):
        return False
    for q in members:
        chart = PlaneChart.for_plane(q)
        for other in members:
            if other is not q and chart.line_of(other).c == 0:
                return False
    return True


def _boxes_attainable(planes: List[Plane], query: Optional[Plane]) -> bool:
    """
    Whether the 3D box and the box of every induced line arrangement exist. A line lying
    in a plane x = ±y with slope ±1 can meet a box edge at every size.
    """
    extras = [query] if query is not None else []
    try:
        half_width = compute_box_half_width(planes, extras)
        for q in planes:
            chart = PlaneChart.for_plane(q)
            lines = [chart.line_of(other) for other in planes if other.id != q.id]
            compute_box_half_width_2d(
                lines, [chart.line_of(plane) for plane in extras], start=half_width
            )
    except BoxGenericityViolation as error:
        logger.debug(f"Redrawing instance: {error}")
        return False
    return True


def generate_planes(
    n: int,
    rng: SplitMix64,
    coefficient_bound: int,
    with_query: bool = False,
    max_attempts: int = MAX_ATTEMPTS,
) -> Tuple[List[Plane], Optional[Plane]]:
    """
    Draw ``n`` planes with small random rational coefficients in general position.

    Args:
        n (int): Number of generators.
        rng (SplitMix64): Random source; the result is a function of its state.
        coefficient_bound (int): Numerators in ``[-bound, bound]``, denominators in ``[1, bound]``.
        with_query (bool): Also draw a query plane S, validated jointly with the generators.
        max_attempts (int): Whole-instance redraws before giving up.

    Returns:
        Tuple[List[Plane], Optional[Plane]]: Generators with ids ``0..n-1`` and S (or None).
    """
    wanted = n + (1 if with_query else 0)
    for attempt in range(1, max_attempts + 1):
        drawn = [_random_plane(rng, coefficient_bound) for _ in range(wanted)]
        if any(plane is None for plane in drawn):
            continue
        planes = [plane.with_id(index) for index, plane in enumerate(drawn[:n])]
        query = drawn[n] if with_query else None
        if (
            general_position_3d(planes, query)
            and _off_origin_planes(drawn)
            and _boxes_attainable(planes, query)
        ):
            if attempt > 1:
                logger.debug(f"General-position planes for n={n} after {attempt} draws")
            return planes, query
    raise GenerationExhausted(
        f"No general-position set of {n} planes after {max_attempts} draws "
        f"with coefficient bound {coefficient_bound}."
    )


def _line_box_attainable(lines: List[Line2], query: Optional[Line2]) -> bool:
    try:
        compute_box_half_width_2d(lines, [query] if query is not None else [])
    except BoxGenericityViolation:
        return False
    return True


def generate_lines(
    n: int,
    rng: SplitMix64,
    coefficient_bound: int,
    with_query: bool = False,
    max_attempts: int = MAX_ATTEMPTS,
) -> Tuple[List[Line2], Optional[Line2]]:
    """
    2D analogue of ``generate_planes``: ``n`` lines, and optionally a query line, with
    no two parallel and no three concurrent.
    """
    wanted = n + (1 if with_query else 0)
    for _ in range(max_attempts):
        drawn = [_random_line(rng, coefficient_bound) for _ in range(wanted)]
        if any(line is None for line in drawn):
            continue
        lines = [line.with_id(index) for index, line in enumerate(drawn[:n])]
        if any(line.c == 0 for line in drawn):
            continue
        query = drawn[n] if with_query else None
        if general_position_2d(drawn) and _line_box_attainable(lines, query):
            return lines, query
    raise GenerationExhausted(
        f"No general-position set of {n} lines after {max_attempts} draws "
        f"with coefficient bound {coefficient_bound}."
    )
