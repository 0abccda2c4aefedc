"""
Exact rational scalars, points, hyperplanes and the predicates built on them.

Every scalar is a ``fractions.Fraction``: it is always reduced, its denominator is
always positive and arithmetic never rounds, so sign tests decide general position
exactly.
"""

import math
import re
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Tuple, Union

from geometry.errors import ParallelLines, ParallelPlanes, SingularTriple

ExactScalar = Fraction
Vector3 = Tuple[Fraction, Fraction, Fraction]
Scalar = Union[int, Fraction, str]

_RATIONAL_LITERAL = re.compile(r"^-?\d+(/\d+)?$")


def parse_rational(text: str) -> Fraction:
    """
    Parse a rational literal of the form ``p/q`` or ``p`` with an optional leading minus.

    Args:
        text (str): The literal. Whitespace inside the literal is not allowed.

    Returns:
        Fraction: The exact value.
    """
    if not _RATIONAL_LITERAL.match(text):
        raise ValueError(f"Invalid rational literal: {text!r}")
    try:
        return Fraction(text)
    except ZeroDivisionError:
        raise ValueError(f"Zero denominator in rational literal: {text!r}")


def format_rational(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def as_fraction(value: Scalar) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("Booleans are not exact scalars.")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"Cannot use {type(value).__name__} as an exact scalar.")


def sign(value: Fraction) -> int:
    if value > 0:
        return 1
    if value < 0:
        return -1
    return 0


def det2(a: Fraction, b: Fraction, c: Fraction, d: Fraction) -> Fraction:
    return a * d - b * c


def det3(rows: Sequence[Sequence[Fraction]]) -> Fraction:
    (a, b, c), (d, e, f), (g, h, i) = rows
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def det4(rows: Sequence[Sequence[Fraction]]) -> Fraction:
    total = Fraction(0)
    for col in range(4):
        minor = [[row[j] for j in range(4) if j != col] for row in rows[1:]]
        term = rows[0][col] * det3(minor)
        total += term if col % 2 == 0 else -term
    return total


def dot3(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


def cross3(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector3:
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def canonical_coefficients(coefficients: Sequence[Scalar]) -> Tuple[Fraction, ...]:
    """
    Scale a coefficient tuple to integers with no common content and a positive
    first nonzero entry, so two tuples describing the same hyperplane compare equal.
    """
    values = [as_fraction(value) for value in coefficients]
    if not any(values):
        return tuple(values)
    common_denominator = math.lcm(*(value.denominator for value in values))
    integers = [value.numerator * (common_denominator // value.denominator) for value in values]
    content = math.gcd(*integers)
    first_nonzero = next(value for value in integers if value != 0)
    if first_nonzero < 0:
        content = -content
    return tuple(Fraction(value // content) for value in integers)


@dataclass(frozen=True)
class Point3:
    x: Fraction
    y: Fraction
    z: Fraction

    def __post_init__(self):
        for name in ("x", "y", "z"):
            object.__setattr__(self, name, as_fraction(getattr(self, name)))

    @property
    def coords(self) -> Vector3:
        return (self.x, self.y, self.z)

    def __add__(self, other: Sequence[Fraction]) -> "Point3":
        other = other.coords if isinstance(other, Point3) else other
        return Point3(self.x + other[0], self.y + other[1], self.z + other[2])

    def __sub__(self, other: "Point3") -> Vector3:
        return (self.x - other.x, self.y - other.y, self.z - other.z)

    def max_abs(self) -> Fraction:
        return max(abs(self.x), abs(self.y), abs(self.z))

    def __str__(self) -> str:
        return f"({', '.join(format_rational(c) for c in self.coords)})"


@dataclass(frozen=True)
class Point2:
    u: Fraction
    v: Fraction

    def __post_init__(self):
        object.__setattr__(self, "u", as_fraction(self.u))
        object.__setattr__(self, "v", as_fraction(self.v))

    @property
    def coords(self) -> Tuple[Fraction, Fraction]:
        return (self.u, self.v)

    def max_abs(self) -> Fraction:
        return max(abs(self.u), abs(self.v))

    def __str__(self) -> str:
        return f"({format_rational(self.u)}, {format_rational(self.v)})"


def centroid3(points: Iterable[Point3]) -> Point3:
    points = list(points)
    count = len(points)
    return Point3(
        sum((p.x for p in points), Fraction(0)) / count,
        sum((p.y for p in points), Fraction(0)) / count,
        sum((p.z for p in points), Fraction(0)) / count,
    )


def centroid2(points: Iterable[Point2]) -> Point2:
    points = list(points)
    count = len(points)
    return Point2(
        sum((p.u for p in points), Fraction(0)) / count,
        sum((p.v for p in points), Fraction(0)) / count,
    )


@dataclass(frozen=True)
class Plane:
    """
    The plane ``a*x + b*y + c*z + d = 0``, stored in canonical form.

    The id is not part of equality: two planes are equal iff they are the same point set.
    """

    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction
    id: Optional[int] = field(default=None, compare=False)

    def __post_init__(self):
        a, b, c, d = canonical_coefficients((self.a, self.b, self.c, self.d))
        if a == b == c == 0:
            raise ValueError("Plane normal (a, b, c) must be nonzero.")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "d", d)

    @property
    def normal(self) -> Vector3:
        return (self.a, self.b, self.c)

    @property
    def coefficients(self) -> Tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.a, self.b, self.c, self.d)

    def evaluate(self, point: Point3) -> Fraction:
        return self.a * point.x + self.b * point.y + self.c * point.z + self.d

    def with_id(self, plane_id: int) -> "Plane":
        return replace(self, id=plane_id)

    def __str__(self) -> str:
        return " ".join(format_rational(c) for c in self.coefficients)


@dataclass(frozen=True)
class Line2:
    """
    The line ``a*u + b*v + c = 0`` in the coordinates of a host plane, canonical like Plane.
    """

    a: Fraction
    b: Fraction
    c: Fraction
    id: Optional[int] = field(default=None, compare=False)

    def __post_init__(self):
        a, b, c = canonical_coefficients((self.a, self.b, self.c))
        if a == b == 0:
            raise ValueError("Line normal (a, b) must be nonzero.")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)

    @property
    def normal(self) -> Tuple[Fraction, Fraction]:
        return (self.a, self.b)

    @property
    def direction(self) -> Tuple[Fraction, Fraction]:
        return (-self.b, self.a)

    @property
    def coefficients(self) -> Tuple[Fraction, Fraction, Fraction]:
        return (self.a, self.b, self.c)

    def evaluate(self, point: Point2) -> Fraction:
        return self.a * point.u + self.b * point.v + self.c

    def parameter(self, point: Point2) -> Fraction:
        """
        Position of a point of this line along its direction; monotone along the line.
        """
        du, dv = self.direction
        return point.u * du + point.v * dv

    def with_id(self, line_id: int) -> "Line2":
        return replace(self, id=line_id)

    def __str__(self) -> str:
        return " ".join(format_rational(c) for c in self.coefficients)


@dataclass(frozen=True)
class ParametricLine:
    """
    The 3D line ``point + t * direction``.
    """

    point: Point3
    direction: Vector3

    def at(self, t: Fraction) -> Point3:
        dx, dy, dz = self.direction
        return self.point + (t * dx, t * dy, t * dz)


def side_of_plane(point: Point3, plane: Plane) -> int:
    return sign(plane.evaluate(point))


def side_of_line(point: Point2, line: Line2) -> int:
    return sign(line.evaluate(point))


def solve3(
    rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]
) -> Optional[Vector3]:
    """
    Solve a 3x3 linear system by Cramer's rule. Returns None when it is singular.
    """
    determinant = det3(rows)
    if determinant == 0:
        return None
    solution = []
    for col in range(3):
        replaced = [
            [rhs[i] if j == col else rows[i][j] for j in range(3)] for i in range(3)
        ]
        solution.append(det3(replaced) / determinant)
    return tuple(solution)


def intersect_three_planes(first: Plane, second: Plane, third: Plane) -> Point3:
    planes = (first, second, third)
    solution = solve3([p.normal for p in planes], [-p.d for p in planes])
    if solution is None:
        raise SingularTriple(
            f"Planes {[p.id for p in planes]} do not meet in a single point."
        )
    return Point3(*solution)


def intersect_two_planes(first: Plane, second: Plane) -> ParametricLine:
    direction = cross3(first.normal, second.normal)
    if not any(direction):
        raise ParallelPlanes(f"Planes {first.id} and {second.id} are parallel.")
    # the plane through the origin orthogonal to the line pins down one point on it
    transversal = Plane(*direction, Fraction(0))
    return ParametricLine(intersect_three_planes(first, second, transversal), direction)


def intersect_two_lines(first: Line2, second: Line2) -> Point2:
    determinant = det2(first.a, first.b, second.a, second.b)
    if determinant == 0:
        raise ParallelLines(f"Lines {first.id} and {second.id} are parallel.")
    u = det2(-first.c, first.b, -second.c, second.b) / determinant
    v = det2(first.a, -first.c, second.a, -second.c) / determinant
    return Point2(u, v)
