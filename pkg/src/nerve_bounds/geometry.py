"""Exact rational points, lines and projective maps in the plane.

Every coordinate is a :class:`fractions.Fraction`; no predicate ever touches
floating point.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

Scalar = Fraction
Number = Union[int, Fraction, str]


class GeometryError(ValueError):
    pass


class IdenticalLines(GeometryError):
    pass


class DegenerateTransform(GeometryError):
    pass


class LineParseError(GeometryError):
    pass


def scalar(value: Number) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to an exact scalar."""
    if isinstance(value, float):
        raise TypeError("floats are not exact; pass a Fraction or 'p/q' string")
    return Fraction(value)


@dataclass(frozen=True, order=True)
class Point:
    x: Fraction
    y: Fraction

    def __post_init__(self):
        object.__setattr__(self, "x", scalar(self.x))
        object.__setattr__(self, "y", scalar(self.y))

    def __add__(self, other: Point) -> Point:
        return Point(self.x + other.x, self.y + other.y)

    def __sub__(self, other: Point) -> Point:
        return Point(self.x - other.x, self.y - other.y)

    def scaled(self, s: Fraction) -> Point:
        return Point(self.x * s, self.y * s)

    def __str__(self):
        return f"({self.x}, {self.y})"


def barycenter(points: Sequence[Point]) -> Point:
    n = len(points)
    return Point(sum((p.x for p in points), Fraction(0)) / n,
                 sum((p.y for p in points), Fraction(0)) / n)


@dataclass(frozen=True, order=True)
class Line:
    """The locus ``a*x + b*y = c``, normalised so the first nonzero of (a, b) is 1."""

    a: Fraction
    b: Fraction
    c: Fraction

    def __post_init__(self):
        a, b, c = scalar(self.a), scalar(self.b), scalar(self.c)
        if a == 0 and b == 0:
            raise GeometryError("line needs (a, b) != (0, 0)")
        lead = a if a != 0 else b
        object.__setattr__(self, "a", a / lead)
        object.__setattr__(self, "b", b / lead)
        object.__setattr__(self, "c", c / lead)

    @classmethod
    def through(cls, p: Point, q: Point) -> Line:
        if p == q:
            raise GeometryError("two distinct points are needed to span a line")
        a = q.y - p.y
        b = p.x - q.x
        return cls(a, b, a * p.x + b * p.y)

    def value(self, p: Point) -> Fraction:
        """Signed residual ``a*x + b*y - c``; zero iff ``p`` lies on the line."""
        return self.a * p.x + self.b * p.y - self.c

    def contains(self, p: Point) -> bool:
        return self.value(p) == 0

    @property
    def direction(self) -> Point:
        return Point(-self.b, self.a)

    def is_parallel(self, other: Line) -> bool:
        return self.a * other.b - self.b * other.a == 0

    def sort_key(self):
        return (self.a, self.b, self.c)

    def to_text(self) -> str:
        return f"{self.a} {self.b} {self.c}"

    def __str__(self):
        return f"{self.a}x + {self.b}y = {self.c}"


class Orientation(Enum):
    CW = -1
    COLLINEAR = 0
    CCW = 1


def cross(u: Point, v: Point) -> Fraction:
    return u.x * v.y - u.y * v.x


def orientation(p: Point, q: Point, r: Point) -> Orientation:
    d = cross(q - p, r - p)
    if d > 0:
        return Orientation.CCW
    if d < 0:
        return Orientation.CW
    return Orientation.COLLINEAR


def intersect_lines(l1: Line, l2: Line) -> Optional[Point]:
    """Crossing point of two lines, or ``None`` for parallels."""
    if l1 == l2:
        raise IdenticalLines(f"{l1} given twice")
    det = l1.a * l2.b - l1.b * l2.a
    if det == 0:
        return None
    x = (l1.c * l2.b - l1.b * l2.c) / det
    y = (l1.a * l2.c - l1.c * l2.a) / det
    return Point(x, y)


# Projective maps act on homogeneous points (x, y, 1) as column vectors. A line
# a*x + b*y = c is the covector (a, b, -c); covectors transform by L -> L M^-1.

Matrix = tuple[tuple[Fraction, ...], ...]


def _det3(m: Matrix) -> Fraction:
    return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))


def _inverse3(m: Matrix) -> Matrix:
    det = _det3(m)
    if det == 0:
        raise DegenerateTransform("singular projective matrix")
    cof = [[Fraction(0)] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(3):
            rows = [r for r in range(3) if r != i]
            cols = [c for c in range(3) if c != j]
            minor = (m[rows[0]][cols[0]] * m[rows[1]][cols[1]]
                     - m[rows[0]][cols[1]] * m[rows[1]][cols[0]])
            cof[i][j] = minor if (i + j) % 2 == 0 else -minor
    return tuple(tuple(cof[j][i] / det for j in range(3)) for i in range(3))


def _covector(line: Line) -> tuple[Fraction, Fraction, Fraction]:
    return (line.a, line.b, -line.c)


def _candidate_rows():
    # Rows completing the covector of the line at infinity to a basis; tried in
    # a fixed order so the transform is deterministic.
    basis = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0), (1, 0, 1), (0, 1, 1),
             (1, 2, 3), (2, -1, 1)]
    for r1 in basis:
        for r2 in basis:
            if r1 != r2:
                yield (tuple(map(Fraction, r1)), tuple(map(Fraction, r2)))


def transform_line(line: Line, m_inv: Matrix) -> Line:
    cov = _covector(line)
    img = [sum(cov[i] * m_inv[i][j] for i in range(3)) for j in range(3)]
    return Line(img[0], img[1], -img[2])


def line_to_infinity_matrix(ell: Line) -> Matrix:
    """A rational projective matrix whose bottom row sends ``ell`` to z = 0."""
    last = _covector(ell)
    for r1, r2 in _candidate_rows():
        m = (r1, r2, last)
        if _det3(m) != 0:
            return m
    raise DegenerateTransform(f"no admissible matrix for {ell}")


def projective_map_line_to_infinity(lines: Sequence[Line], ell: Line) -> list[Line]:
    """Images of ``lines`` minus ``ell`` under a map sending ``ell`` to infinity.

    The remaining lines keep their projective crossing pattern; crossings on
    ``ell`` itself move to infinity, so parallel pairs in the output are exactly
    the pairs that crossed on ``ell``.
    """
    if ell not in lines:
        raise GeometryError(f"{ell} is not one of the input lines")
    m = line_to_infinity_matrix(ell)
    m_inv = _inverse3(m)
    out = []
    for line in lines:
        if line == ell:
            continue
        out.append(transform_line(line, m_inv))
    return out


def parse_lines(text: str) -> list[Line]:
    """Parse the ``a b c`` per-record format; ``#`` starts a comment line."""
    lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        record = raw.strip()
        if not record or record.startswith("#"):
            continue
        parts = record.split()
        if len(parts) != 3:
            raise LineParseError(f"line {lineno}: expected 'a b c', got {raw!r}")
        try:
            a, b, c = (Fraction(p) for p in parts)
        except (ValueError, ZeroDivisionError) as exc:
            raise LineParseError(f"line {lineno}: {exc}") from None
        try:
            lines.append(Line(a, b, c))
        except GeometryError as exc:
            raise LineParseError(f"line {lineno}: {exc}") from None
    return lines


def format_lines(lines: Iterable[Line]) -> str:
    return "".join(line.to_text() + "\n" for line in lines)
