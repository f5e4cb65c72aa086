"""
Order-3 and order-5 tests by sign choices of root triples.

Order 3: some choice of roots r_i of x0 - a_i has r1 r2 + r2 r3 + r3 r1 = 0.
Order 5: normalized level-0 roots r (r1 r2 r3 = -y0) and level-1 roots s of
(r_i + r_j)(r_i + r_k) (s1 s2 s3 = (r1 + r2)(r2 + r3)(r3 + r1)) with
sum r_i r_j + sum s_i s_j = 0 and sum r_i r_j != 0.
"""
from dataclasses import dataclass
from itertools import product
from typing import Optional

from arithmetic.errors import ConsistencyError, InfinityBase
from config.logging_config import get_logger
from curves.curve import Curve, Point
from halving.halving import SIGN_PATTERNS, RootTriple, canonical_triple
from models.records import CertificateRecord

logger = get_logger("torsion")


@dataclass(frozen=True)
class OrderCertificate:
    order: int
    level0: RootTriple
    level1: Optional[RootTriple] = None

    def verify(self, curve: Curve, p: Point) -> bool:
        """Re-evaluate the algebraic conditions independently of the search."""
        r = self.level0
        if any(ri * ri != p.x - a for ri, a in zip(r, curve.alphas)):
            return False
        if self.order == 3:
            return r.sigma2().is_zero()
        s = self.level1
        if s is None or r.r1 * r.r2 * r.r3 != -p.y:
            return False
        squares = [(r[i] + r[j]) * (r[i] + r[k]) for i, j, k in ((0, 1, 2), (1, 2, 0), (2, 0, 1))]
        if any(si * si != v for si, v in zip(s, squares)):
            return False
        if s.r1 * s.r2 * s.r3 != r.pair_product():
            return False
        return not r.sigma2().is_zero() and (r.sigma2() + s.sigma2()).is_zero()

    def to_record(self) -> CertificateRecord:
        return CertificateRecord(
            order=self.order,
            level0=[str(v) for v in self.level0],
            level1=[str(v) for v in self.level1] if self.level1 else None,
        )


def _canonical_roots(curve: Curve, p: Point):
    field = curve.field
    roots = []
    for a in curve.alphas:
        pair = field.sqrt(p.x - a)
        if pair is None:
            return None
        roots.append(pair[0])
    return RootTriple(*roots)


def is_order3(curve: Curve, p: Point) -> Optional[OrderCertificate]:
    """Certificate when P has order 3; all eight sign patterns are tried."""
    if p.is_infinity:
        raise InfinityBase("Order tests need an affine point")
    roots = _canonical_roots(curve, p)
    if roots is None:
        return None
    for signs in product((1, -1), repeat=3):
        r = roots.signed(signs)
        if r.sigma2().is_zero():
            cert = OrderCertificate(3, r)
            if not cert.verify(curve, p):
                raise ConsistencyError(f"Order-3 certificate for {p} failed to verify")
            return cert
    return None


def is_order5(curve: Curve, p: Point) -> Optional[OrderCertificate]:
    """Certificate when P has order 5, from the two-level normalized search."""
    if p.is_infinity:
        raise InfinityBase("Order tests need an affine point")
    if p.y.is_zero():
        return None
    base = canonical_triple(curve, p)
    if base is None:
        return None
    field = curve.field
    for signs in SIGN_PATTERNS:
        r = base.signed(signs)
        level0_sum = r.sigma2()
        if level0_sum.is_zero():
            continue
        values = [(r[i] + r[j]) * (r[i] + r[k]) for i, j, k in ((0, 1, 2), (1, 2, 0), (2, 0, 1))]
        pairs = [field.sqrt(v) for v in values]
        if any(pair is None for pair in pairs) or any(v.is_zero() for v in values):
            continue
        s1, s2 = pairs[0][0], pairs[1][0]
        level1 = RootTriple(s1, s2, r.pair_product() / (s1 * s2))
        for signs1 in SIGN_PATTERNS:
            s = level1.signed(signs1)
            if (level0_sum + s.sigma2()).is_zero():
                cert = OrderCertificate(5, r, s)
                if not cert.verify(curve, p):
                    raise ConsistencyError(f"Order-5 certificate for {p} failed to verify")
                logger.debug(f"order-5 certificate for {p} on {curve}")
                return cert
    return None
