"""
Division by 2^n: breadth-first over halves, plus the direct quarter-point formula.

With level-0 roots r_i of x0 - a_i and level-1 roots s_i of
(r_i + r_j)(r_i + r_k), normalized by s1 s2 s3 = (r1 + r2)(r2 + r3)(r3 + r1),
a quarter R of P is

    x(R) = x0 + sum r_i r_j + sum s_i s_j,  y(R) = -(s1 + s2)(s2 + s3)(s3 + s1).
"""
from typing import List, Set

from arithmetic.errors import BadParameter, ConsistencyError
from config.logging_config import get_logger
from curves.curve import Curve, Point
from halving.halving import SIGN_PATTERNS, RootTriple, canonical_triple, halves, kernel_of_two

logger = get_logger("division")


def _halves_of(curve: Curve, p: Point) -> List[Point]:
    if p.is_infinity:
        return kernel_of_two(curve)
    return [h.point for h in halves(curve, p)]


def _sorted(points) -> List[Point]:
    return sorted(points, key=lambda pt: pt.sort_key())


def quarter_points(curve: Curve, p: Point) -> List[Point]:
    """All R with 4R = P from the closed formula, without the group law."""
    if p.is_infinity:
        raise BadParameter("The quarter formula needs an affine base point")
    base = canonical_triple(curve, p)
    if base is None:
        return []
    field = curve.field
    found: Set[Point] = set()
    for signs in SIGN_PATTERNS:
        r = base.signed(signs)
        values = [
            (r[i] + r[j]) * (r[i] + r[k]) for i, j, k in ((0, 1, 2), (1, 2, 0), (2, 0, 1))
        ]
        roots = [field.sqrt(v) for v in values]
        if any(pair is None for pair in roots):
            continue
        s1, s2 = roots[0][0], roots[1][0]
        s3 = r.pair_product() / (s1 * s2)
        level1 = RootTriple(s1, s2, s3)
        for signs1 in SIGN_PATTERNS:
            s = level1.signed(signs1)
            x = p.x + r.sigma2() + s.sigma2()
            y = -s.pair_product()
            found.add(Point(x, y))
    return _sorted(found)


def divide_by_pow2(curve: Curve, p: Point, n: int) -> List[Point]:
    """All K-rational R with 2^n R = P, sorted canonically."""
    if n < 1:
        raise BadParameter(f"n must be at least 1, got {n}")
    if not curve.contains(p):
        raise BadParameter(f"{p} is not on {curve}")
    level = {p}
    for depth in range(n):
        nxt: Set[Point] = set()
        for q in level:
            nxt.update(_halves_of(curve, q))
        level = nxt
        logger.debug(f"depth {depth + 1}: {len(level)} points")
        if not level:
            break
    result = _sorted(level)
    if n == 2 and not p.is_infinity:
        direct = quarter_points(curve, p)
        if direct != result:
            raise ConsistencyError(
                f"Quarter formula disagrees with repeated halving over {p}",
                {"halving": [str(pt) for pt in result], "formula": [str(pt) for pt in direct]},
            )
    return result
