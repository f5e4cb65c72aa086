"""
The parameter curve for Z/8 + Z/4 inside the order-8 family.

E_{4,c} carries Z/4 + Z/8 exactly when some admissible d satisfies
(c^2 - 1) d = i (d^2 - 1) c, i.e. c - 1/c = i (d - 1/d).
"""
from typing import List, Tuple

from arithmetic.errors import BadParameter, NotOnParameterCurve
from arithmetic.fields import Field, FieldElement
from config.logging_config import get_logger
from families.constructors import family_e4, require_sqrt_minus_one

logger = get_logger("families")


def m84_relation(field: Field, c, d) -> bool:
    """(c^2 - 1) d == i (d^2 - 1) c."""
    i = require_sqrt_minus_one(field, "m84")
    c, d = field(c), field(d)
    return (c * c - 1) * d == i * (d * d - 1) * c


def _is_e4_admissible(field: Field, c: FieldElement) -> bool:
    try:
        family_e4(field, c)
    except BadParameter:
        return False
    return True


def solve_m84(field: Field) -> List[Tuple[FieldElement, FieldElement]]:
    """All (c, d) with c and d admissible for the order-8 family, sorted by (c, d)."""
    i = require_sqrt_minus_one(field, "solve-m84")
    found = set()
    for c in field.nonzero_elements():
        if not _is_e4_admissible(field, c):
            continue
        # d - 1/d = k  <=>  d^2 - k d - 1 = 0
        k = (c - 1 / c) / i
        roots = field.sqrt(k * k + 4)
        if roots is None:
            continue
        for root in roots:
            d = (k + root) / 2
            if d.is_zero() or not _is_e4_admissible(field, d):
                continue
            if m84_relation(field, c, d):
                found.add((c, d))
    result = sorted(found, key=lambda pair: (pair[0].sort_key(), pair[1].sort_key()))
    logger.debug(f"{len(result)} admissible (c, d) over {field}")
    return result


def m84_birational(field: Field, xi, eta) -> Tuple[FieldElement, FieldElement]:
    """(xi, eta) on eta^2 = xi^3 - xi to (c, d) on the relation.

    s = eta/(xi + xi^2) and t = eta/(1 + xi) satisfy s^2 t + s t^2 + s - t = 0,
    and (c, d) = (-i t, s).
    """
    i = require_sqrt_minus_one(field, "m84")
    xi, eta = field(xi), field(eta)
    if eta * eta != xi ** 3 - xi:
        raise NotOnParameterCurve(f"({xi}, {eta}) is not on eta^2 = xi^3 - xi")
    if xi.is_zero() or (xi + 1).is_zero():
        raise BadParameter("The map is undefined at xi = 0 and xi = -1", {"xi": str(xi)})
    s = eta / (xi + xi * xi)
    t = eta / (1 + xi)
    return -i * t, s
