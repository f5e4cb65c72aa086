"""
Chord-tangent group law, point orders, point counting and group structure.
"""
from functools import lru_cache
from math import gcd, sqrt
from typing import Iterable, List, Set, Tuple

from arithmetic.errors import BadParameter, ConsistencyError, HasseViolation, NotTorsionWithinBound
from config.settings import settings
from config.logging_config import get_logger
from curves.curve import INFINITY, Curve, Point
from models.records import GroupShape

logger = get_logger("group")


def neg(curve: Curve, p: Point) -> Point:
    if p.is_infinity:
        return p
    return Point(p.x, -p.y)


def add(curve: Curve, p: Point, q: Point) -> Point:
    if p.is_infinity:
        return q
    if q.is_infinity:
        return p
    if p.x == q.x:
        if p.y == q.y:
            return double(curve, p)
        return INFINITY
    slope = (q.y - p.y) / (q.x - p.x)
    x3 = slope * slope - curve.a2 - p.x - q.x
    y3 = slope * (p.x - x3) - p.y
    return Point(x3, y3)


def double(curve: Curve, p: Point) -> Point:
    if p.is_infinity or p.y.is_zero():
        return INFINITY
    slope = (3 * p.x * p.x + 2 * curve.a2 * p.x + curve.a4) / (2 * p.y)
    x3 = slope * slope - curve.a2 - 2 * p.x
    y3 = slope * (p.x - x3) - p.y
    return Point(x3, y3)


def sub(curve: Curve, p: Point, q: Point) -> Point:
    return add(curve, p, neg(curve, q))


def scalar_mul(curve: Curve, n: int, p: Point) -> Point:
    if n < 0:
        return scalar_mul(curve, -n, neg(curve, p))
    result = INFINITY
    addend = p
    while n:
        if n & 1:
            result = add(curve, result, addend)
        addend = double(curve, addend)
        n >>= 1
    return result


def group_law(curve: Curve, op: str, *args) -> Point:
    """Dispatch add, neg, double, sub or scalar_mul (args: n, P)."""
    ops = {"add": add, "neg": neg, "double": double, "sub": sub}
    if op == "scalar_mul":
        n, p = args
        return scalar_mul(curve, n, p)
    if op not in ops:
        raise BadParameter(f"Unknown group operation: {op}")
    return ops[op](curve, *args)


def hasse_interval(q: int) -> Tuple[float, float]:
    root = 2 * sqrt(q)
    return q + 1 - root, q + 1 + root


def within_hasse(q: int, count: int) -> bool:
    # (count - q - 1)^2 <= 4q, kept in integers
    return (count - q - 1) ** 2 <= 4 * q


def enumerate_points(curve: Curve) -> List[Point]:
    """All points, infinity first, then by (x, y) in field enumeration order."""
    field = curve.field
    points = [INFINITY]
    for x in field.elements():
        roots = field.sqrt(curve.rhs(x))
        if roots is None:
            continue
        r, s = roots
        points.append(Point(x, r))
        if r != s:
            points.append(Point(x, s))
    return points


@lru_cache(maxsize=4096)
def count_points(curve: Curve) -> int:
    """|E(F_q)| by brute force over x, checked against the Hasse bound."""
    field = curve.field
    count = 1
    for x in field.elements():
        v = curve.rhs(x)
        if v.is_zero():
            count += 1
        elif field.is_square(v):
            count += 2
    if not within_hasse(field.order, count):
        raise HasseViolation(
            f"{curve} has {count} points, outside the Hasse interval",
            {"curve": str(curve), "count": count, "q": field.order},
        )
    return count


def _prime_factors(n: int) -> List[int]:
    factors, d = [], 2
    while d * d <= n:
        if n % d == 0:
            factors.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        factors.append(n)
    return factors


def point_order(curve: Curve, p: Point) -> int:
    """Least n >= 1 with nP = infinity.

    Over finite fields the group order is known, so the order is found by
    stripping prime factors from |E|. Over Q the search stops at the
    configured bound.
    """
    if p.is_infinity:
        return 1
    if curve.field.is_finite:
        order = count_points(curve)
        for ell in _prime_factors(order):
            while order % ell == 0 and scalar_mul(curve, order // ell, p).is_infinity:
                order //= ell
        return order
    bound = settings.rational_order_bound
    current = p
    for n in range(1, bound + 1):
        if current.is_infinity:
            return n
        current = add(curve, current, p)
    raise NotTorsionWithinBound(
        f"{p} has no order up to {bound} on {curve}", {"point": str(p), "bound": bound}
    )


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def group_structure(curve: Curve) -> Tuple[GroupShape, int]:
    """(n1, n2) with E(F_q) = Z/n1 + Z/n2, and |E|."""
    field = curve.field
    if not field.is_finite:
        raise BadParameter("Group structure needs a finite field")
    if field.order > settings.group_structure_max_q:
        raise BadParameter(
            f"q = {field.order} exceeds the configured bound {settings.group_structure_max_q}"
        )
    count = count_points(curve)
    # full 2-torsion: Z/2 + Z/2 sits inside, so the exponent is at most |E|/2
    ceiling = count // 2
    exponent = 1
    for pt in enumerate_points(curve):
        exponent = _lcm(exponent, point_order(curve, pt))
        if exponent == ceiling:
            break
    n1 = count // exponent
    if n1 * exponent != count or exponent % n1 != 0 or n1 % 2 != 0:
        raise ConsistencyError(
            f"Inconsistent structure for {curve}: |E| = {count}, exponent {exponent}",
            {"curve": str(curve), "count": count, "exponent": exponent},
        )
    logger.debug(f"{curve}: {count} points, shape ({n1}, {exponent})")
    return GroupShape(n1=n1, n2=exponent), count


def generated_subgroup(curve: Curve, generators: Iterable[Point]) -> Set[Point]:
    """Closure of the generators under addition."""
    gens = [g for g in generators if not g.is_infinity]
    subgroup = {INFINITY}
    frontier = [INFINITY]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                s = add(curve, p, g)
                if s not in subgroup:
                    subgroup.add(s)
                    nxt.append(s)
        frontier = nxt
    return subgroup


def subgroup_shape(curve: Curve, generators: Iterable[Point]) -> GroupShape:
    """Shape of the subgroup the generators span: its size and exponent."""
    gens = list(generators)
    size = len(generated_subgroup(curve, gens))
    exponent = 1
    for g in gens:
        exponent = _lcm(exponent, point_order(curve, g))
    return GroupShape(n1=size // exponent, n2=exponent)

