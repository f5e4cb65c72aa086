"""
Curves y^2 = (x - a1)(x - a2)(x - a3) with distinct roots, and their points.
"""
from dataclasses import dataclass
from typing import Optional, Tuple

from arithmetic.errors import BadParameter, NotDistinct, ParseError
from arithmetic.fields import Field, FieldElement, parse_field_spec
from models.records import CurveRecord, PointRecord


@dataclass(frozen=True)
class Point:
    """Affine point, or the point at infinity when x is None."""

    x: Optional[FieldElement] = None
    y: Optional[FieldElement] = None

    @classmethod
    def infinity(cls) -> "Point":
        return INFINITY

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def sort_key(self):
        if self.is_infinity:
            return (0,)
        return (1, self.x.sort_key(), self.y.sort_key())

    def __str__(self):
        return format_point(self)

    def to_record(self) -> PointRecord:
        if self.is_infinity:
            return PointRecord(infinity=True)
        return PointRecord(x=str(self.x), y=str(self.y))


INFINITY = Point()


class Curve:
    """y^2 = (x - a1)(x - a2)(x - a3).

    The roots keep the order they were given in, so W_i refers to the caller's
    a_i. Equality and hashing ignore the order.
    """

    __slots__ = ("field", "alphas", "a2", "a4", "a6", "_key")

    def __init__(self, field: Field, alphas: Tuple[FieldElement, FieldElement, FieldElement]):
        self.field = field
        self.alphas = tuple(field(a) for a in alphas)
        a1, a2, a3 = self.alphas
        if a1 == a2 or a2 == a3 or a1 == a3:
            raise NotDistinct(
                f"Roots must be pairwise distinct, got {[str(a) for a in self.alphas]}",
                {"alphas": [str(a) for a in self.alphas]},
            )
        # y^2 = x^3 + a2 x^2 + a4 x + a6
        self.a2 = -(a1 + a2 + a3)
        self.a4 = a1 * a2 + a2 * a3 + a3 * a1
        self.a6 = -(a1 * a2 * a3)
        self._key = (field.key, tuple(sorted(a.value for a in self.alphas)))

    def __eq__(self, other):
        return isinstance(other, Curve) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def sort_key(self):
        return tuple(sorted(a.sort_key() for a in self.alphas))

    @property
    def sorted_alphas(self) -> Tuple[FieldElement, ...]:
        return tuple(sorted(self.alphas, key=lambda a: a.sort_key()))

    def rhs(self, x: FieldElement) -> FieldElement:
        a1, a2, a3 = self.alphas
        return (x - a1) * (x - a2) * (x - a3)

    def contains(self, point: Point) -> bool:
        if point.is_infinity:
            return True
        return point.y * point.y == self.rhs(point.x)

    def point(self, x, y) -> Point:
        """Build an affine point, checking that it lies on the curve."""
        pt = Point(self.field(x), self.field(y))
        if not self.contains(pt):
            raise BadParameter(f"({pt.x}, {pt.y}) is not on {self}")
        return pt

    def w(self, i: int) -> Point:
        """The 2-torsion point W_i = (a_i, 0), i in 1..3."""
        return Point(self.alphas[i - 1], self.field.zero)

    def two_torsion(self) -> Tuple[Point, Point, Point]:
        return self.w(1), self.w(2), self.w(3)

    def __str__(self):
        return format_curve(self)

    __repr__ = __str__

    def to_record(self) -> CurveRecord:
        return CurveRecord(field=str(self.field), alphas=[str(a) for a in self.alphas])


def make_curve(field: Field, a1, a2, a3) -> Curve:
    return Curve(field, (a1, a2, a3))


def format_curve(curve: Curve) -> str:
    return f"{curve.field};alphas=" + ",".join(str(a) for a in curve.alphas)


def format_point(point: Point) -> str:
    if point.is_infinity:
        return "inf"
    return f"{point.x},{point.y}"


def parse_alphas(field: Field, text: str) -> Curve:
    parts = [p for p in text.split(",")]
    if len(parts) != 3:
        raise ParseError(f"A curve needs three roots, got {text!r}")
    return make_curve(field, *(field.parse(p) for p in parts))


def parse_curve(text: str) -> Curve:
    """Parse `<field-spec>;alphas=<a1>,<a2>,<a3>`."""
    field_text, sep, rest = text.partition(";")
    if not sep or not rest.startswith("alphas="):
        raise ParseError(f"Bad curve literal {text!r}; expected <field>;alphas=a1,a2,a3")
    field = parse_field_spec(field_text)
    return parse_alphas(field, rest[len("alphas="):])


def parse_point(curve: Curve, text: str) -> Point:
    """Parse `inf` or `<x>,<y>` on the given curve."""
    text = text.strip()
    if text.lower() == "inf":
        return INFINITY
    parts = text.split(",")
    if len(parts) != 2:
        raise ParseError(f"Bad point literal {text!r}; expected inf or x,y")
    field = curve.field
    return curve.point(field.parse(parts[0]), field.parse(parts[1]))
