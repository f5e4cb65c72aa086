"""
Isomorphisms x -> u^2 x + r, y -> u^3 y between curves in split-root form.

The kappa-scaling (x, y) -> (x/k^2, y/k^3) is the r = 0, u = 1/k case.
"""
from dataclasses import dataclass
from itertools import permutations
from typing import Optional, Tuple

from arithmetic.errors import BadParameter, ZeroScale
from arithmetic.fields import FieldElement
from config.logging_config import get_logger
from curves.curve import Curve, Point
from models.records import IsoWitnessRecord

logger = get_logger("isomorphism")


@dataclass(frozen=True)
class ScaleIsomorphism:
    """E -> E(kappa): roots a_i/k^2, points (x/k^2, y/k^3)."""

    source: Curve
    target: Curve
    kappa: FieldElement

    def forward(self, p: Point) -> Point:
        if p.is_infinity:
            return p
        k2 = self.kappa * self.kappa
        return Point(p.x / k2, p.y / (k2 * self.kappa))

    def backward(self, p: Point) -> Point:
        if p.is_infinity:
            return p
        k2 = self.kappa * self.kappa
        return Point(p.x * k2, p.y * k2 * self.kappa)


def scale_iso(curve: Curve, kappa) -> ScaleIsomorphism:
    kappa = curve.field(kappa)
    if kappa.is_zero():
        raise ZeroScale("Scaling factor must be nonzero")
    k2 = kappa * kappa
    target = Curve(curve.field, tuple(a / k2 for a in curve.alphas))
    return ScaleIsomorphism(curve, target, kappa)


@dataclass(frozen=True)
class IsoWitness:
    """x -> u^2 x + r sends root a_i of C1 to root sigma[i] of C2 (0-based)."""

    u: FieldElement
    r: FieldElement
    sigma: Tuple[int, int, int]

    def map_point(self, p: Point) -> Point:
        if p.is_infinity:
            return p
        u2 = self.u * self.u
        return Point(u2 * p.x + self.r, u2 * self.u * p.y)

    def check(self, c1: Curve, c2: Curve) -> bool:
        u2 = self.u * self.u
        return all(
            u2 * a + self.r == c2.alphas[self.sigma[i]] for i, a in enumerate(c1.alphas)
        )

    def to_record(self) -> IsoWitnessRecord:
        return IsoWitnessRecord(u=str(self.u), r=str(self.r), sigma=[s + 1 for s in self.sigma])


def _witness_from_ratios(c1: Curve, c2: Curve) -> Optional[IsoWitness]:
    field = c1.field
    a = c1.alphas
    for sigma in permutations(range(3)):
        b = [c2.alphas[s] for s in sigma]
        u2 = (b[1] - b[0]) / (a[1] - a[0])
        r = b[0] - u2 * a[0]
        if u2 * a[2] + r != b[2]:
            continue
        roots = field.sqrt(u2)
        if roots is None:
            continue
        return IsoWitness(roots[0], r, tuple(sigma))
    return None


def _witness_by_search(c1: Curve, c2: Curve) -> Optional[IsoWitness]:
    field = c1.field
    targets = list(c2.alphas)
    for u in field.nonzero_elements():
        u2 = u * u
        for r in field.elements():
            images = [u2 * a + r for a in c1.alphas]
            if set(images) == set(targets):
                sigma = tuple(targets.index(img) for img in images)
                return IsoWitness(u, r, sigma)
    return None


def is_isomorphic(c1: Curve, c2: Curve, exhaustive: bool = False) -> Optional[IsoWitness]:
    """Witness (u, r, sigma) or None.

    The default recovers u^2 from root-difference ratios for each of the six
    root matchings, which is exact over every field. `exhaustive` scans all
    (u, r) pairs over a finite field instead.
    """
    if c1.field != c2.field:
        raise BadParameter("Curves live over different fields")
    if exhaustive:
        witness = _witness_by_search(c1, c2)
    else:
        witness = _witness_from_ratios(c1, c2)
    if witness is not None and not witness.check(c1, c2):
        raise BadParameter(f"Witness failed to map roots of {c1} onto {c2}")
    return witness


def iso_class_key(curve: Curve):
    """Complete isomorphism invariant over a finite field.

    For each ordering of the roots take the ratio (a3 - a1)/(a2 - a1) and the
    square class of a2 - a1; two curves are isomorphic exactly when their sets
    of such pairs coincide, so the minimum pair names the class.
    """
    field = curve.field
    best = None
    for i, j, k in permutations(curve.alphas):
        d = j - i
        ratio = (k - i) / d
        candidate = (ratio.sort_key(), field.is_square(d))
        if best is None or candidate < best:
            best = candidate
    return best
