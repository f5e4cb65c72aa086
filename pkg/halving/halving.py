"""
Division by 2 on y^2 = (x - a1)(x - a2)(x - a3).

P = (x0, y0) is a double exactly when every x0 - a_i is a square. A choice of
roots r_i with r_i^2 = x0 - a_i and r1 r2 r3 = -y0 gives the half

    x1 = x0 + r1 r2 + r2 r3 + r3 r1,  y1 = -(r1 + r2)(r2 + r3)(r3 + r1)

and the four halves come from flipping the signs of two roots at a time.
"""
from dataclasses import dataclass
from typing import List, Optional, Tuple

from arithmetic.errors import BadParameter, ConsistencyError, InfinityBase, NotAHalf
from arithmetic.fields import FieldElement
from config.logging_config import get_logger
from curves.curve import INFINITY, Curve, Point
from curves.group import double, neg, sub
from models.records import HalfRecord, OffsetRecord, RootTripleRecord

logger = get_logger("halving")

SIGN_PATTERNS = ((1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1))


@dataclass(frozen=True)
class RootTriple:
    """Roots (r1, r2, r3) of x0 - a_i attached to a base point."""

    r1: FieldElement
    r2: FieldElement
    r3: FieldElement

    def __iter__(self):
        return iter((self.r1, self.r2, self.r3))

    def __getitem__(self, i: int) -> FieldElement:
        return (self.r1, self.r2, self.r3)[i]

    def signed(self, signs) -> "RootTriple":
        return RootTriple(*(r if s > 0 else -r for r, s in zip(self, signs)))

    def flip(self, i: int) -> "RootTriple":
        """Negate the two roots other than r_i (i in 1..3)."""
        signs = [-1, -1, -1]
        signs[i - 1] = 1
        return self.signed(signs)

    def sigma2(self) -> FieldElement:
        r1, r2, r3 = self
        return r1 * r2 + r2 * r3 + r3 * r1

    def pair_product(self) -> FieldElement:
        """(r1 + r2)(r2 + r3)(r3 + r1)."""
        r1, r2, r3 = self
        return (r1 + r2) * (r2 + r3) * (r3 + r1)

    def satisfies(self, curve: Curve, base: Point) -> bool:
        squares_ok = all(r * r == base.x - a for r, a in zip(self, curve.alphas))
        return squares_ok and self.r1 * self.r2 * self.r3 == -base.y

    def to_record(self) -> RootTripleRecord:
        return RootTripleRecord(r=[str(r) for r in self])


@dataclass(frozen=True)
class HalfPoint:
    point: Point
    triple: RootTriple


def half_from_triple(curve: Curve, base: Point, triple: RootTriple) -> Point:
    x1 = base.x + triple.sigma2()
    y1 = -triple.pair_product()
    return Point(x1, y1)


def _require_on_curve(curve: Curve, p: Point) -> None:
    if not curve.contains(p):
        raise BadParameter(f"{p} is not on {curve}")


def canonical_triple(curve: Curve, p: Point) -> Optional[RootTriple]:
    """Canonical roots of x0 - a1 and x0 - a2, r3 forced by r1 r2 r3 = -y0.

    When y0 = 0 one root is zero and all three are taken canonical.
    """
    field = curve.field
    roots = []
    for a in curve.alphas:
        pair = field.sqrt(p.x - a)
        if pair is None:
            return None
        roots.append(pair[0])
    r1, r2, r3 = roots
    if not p.y.is_zero():
        r3 = -p.y / (r1 * r2)
    return RootTriple(r1, r2, r3)


def is_halvable(curve: Curve, p: Point) -> bool:
    """P is in 2E(K): infinity always, otherwise every x0 - a_i is a square."""
    if p.is_infinity:
        return True
    _require_on_curve(curve, p)
    field = curve.field
    return all(field.is_square(p.x - a) for a in curve.alphas)


def kernel_of_two(curve: Curve) -> List[Point]:
    """The four halves of infinity."""
    return [INFINITY, *curve.two_torsion()]


def halves(curve: Curve, p: Point) -> List[HalfPoint]:
    """The four halves of P with their root triples, or [] when P is not a double."""
    if p.is_infinity:
        raise InfinityBase("Halves of infinity are the 2-torsion points; use kernel_of_two")
    _require_on_curve(curve, p)
    base = canonical_triple(curve, p)
    if base is None:
        return []
    result = []
    for signs in SIGN_PATTERNS:
        triple = base.signed(signs)
        result.append(HalfPoint(half_from_triple(curve, p, triple), triple))
    return result


def halve_w(curve: Curve, i: int, r_j: FieldElement, r_k: FieldElement) -> Point:
    """Half of W_i from roots of a_i - a_j and a_i - a_k: (a_i + r_j r_k, -(r_j + r_k) r_j r_k)."""
    return Point(curve.alphas[i - 1] + r_j * r_k, -(r_j + r_k) * r_j * r_k)


def recover_roots(curve: Curve, p: Point, q: Point) -> RootTriple:
    """The root triple producing the half Q of P.

    r_j + r_k = -y1/(x1 - a_i) and
    r_i = -(y1/2)(-1/(x1 - a_i) + 1/(x1 - a_j) + 1/(x1 - a_k)).
    """
    if p.is_infinity:
        raise InfinityBase("Infinity has no root triple")
    _require_on_curve(curve, p)
    if q.is_infinity or not curve.contains(q) or double(curve, q) != p:
        raise NotAHalf(f"{q} is not a half of {p}", {"P": str(p), "Q": str(q)})
    x1, y1 = q.x, q.y
    inv = [1 / (x1 - a) for a in curve.alphas]
    half_y = y1 / 2

    def root(i: int) -> FieldElement:
        j, k = [n for n in range(3) if n != i]
        return -half_y * (-inv[i] + inv[j] + inv[k])

    roots = [root(i) for i in range(3)]
    if p.y.is_zero():
        # P = W_i: the root at a_i is exactly zero
        i = next(n for n, a in enumerate(curve.alphas) if a == p.x)
        j, k = [n for n in range(3) if n != i]
        roots[i] = curve.field.zero
        if halve_w(curve, i + 1, roots[j], roots[k]) != q:
            raise ConsistencyError(f"Two-torsion fallback failed for {q} over {p}")
    triple = RootTriple(*roots)
    if not triple.satisfies(curve, p) or half_from_triple(curve, p, triple) != q:
        raise ConsistencyError(f"Recovered roots do not reproduce {q}", {"P": str(p)})
    return triple


def half_offset(curve: Curve, p: Point, q: Point, i: int) -> Point:
    """The half Q_i obtained by negating r_j and r_k; Q_i - Q = W_i.

    Also checks that Q_i, -Q and W_i lie on y = (r_j + r_k)(x - a_i).
    """
    if i not in (1, 2, 3):
        raise BadParameter(f"Flip index must be 1, 2 or 3, got {i}")
    triple = recover_roots(curve, p, q)
    flipped = half_from_triple(curve, p, triple.flip(i))
    w_i = curve.w(i)
    if sub(curve, flipped, q) != w_i:
        raise ConsistencyError(f"Q_{i} - Q != W_{i} for Q = {q}")
    if not collinear_on_offset_line(curve, triple, i, [flipped, neg(curve, q), w_i]):
        raise ConsistencyError(f"Q_{i}, -Q and W_{i} are not on the offset line")
    return flipped


def collinear_on_offset_line(curve: Curve, triple: RootTriple, i: int, points) -> bool:
    j, k = [n for n in range(3) if n != i - 1]
    slope = triple[j] + triple[k]
    a_i = curve.alphas[i - 1]
    return all(pt.y == slope * (pt.x - a_i) for pt in points)


def offset_table(curve: Curve, p: Point, half: HalfPoint) -> List[Tuple[int, Point, Point]]:
    """(i, Q_i, W_i) for i = 1, 2, 3."""
    return [(i, half_offset(curve, p, half.point, i), curve.w(i)) for i in (1, 2, 3)]


def half_to_record(curve: Curve, p: Point, half: HalfPoint, with_offsets: bool = True) -> HalfRecord:
    offsets = []
    if with_offsets:
        offsets = [
            OffsetRecord(i=i, flipped_half=q_i.to_record(), offset=w_i.to_record())
            for i, q_i, w_i in offset_table(curve, p, half)
        ]
    return HalfRecord(point=half.point.to_record(), triple=half.triple.to_record(), offsets=offsets)

