"""
Versal families of curves with prescribed torsion, in closed form.

Every constructor validates its parameter domain, builds the curve and marks
the torsion points the family guarantees. `MarkedCurve.validate()` re-checks
the marked orders with the group law.
"""
from typing import Dict, List, Optional, Tuple

from arithmetic.errors import BadParameter, ConsistencyError, NoSqrtMinusOne, NotOnParameterCurve
from arithmetic.fields import Field, FieldElement
from config.logging_config import get_logger
from curves.curve import Curve, Point, make_curve
from curves.group import add, double, neg, scalar_mul
from curves.isomorphism import scale_iso
from families.marked import MarkedCurve, MarkedPoint, require
from halving.halving import RootTriple, halve_w
from models.records import GroupShape
from torsion.criteria import OrderCertificate
from torsion.identities import heron_product, order5_cubic

logger = get_logger("families")

SHAPE_2_2 = GroupShape(n1=2, n2=2)
SHAPE_2_4 = GroupShape(n1=2, n2=4)
SHAPE_4_4 = GroupShape(n1=4, n2=4)
SHAPE_2_6 = GroupShape(n1=2, n2=6)
SHAPE_2_8 = GroupShape(n1=2, n2=8)
SHAPE_2_10 = GroupShape(n1=2, n2=10)


def _w_half_orbit(curve: Curve, i: int, r_j: FieldElement, r_k: FieldElement) -> List[Point]:
    """The four halves of W_i from one choice of roots of a_i - a_j and a_i - a_k."""
    return [
        halve_w(curve, i, r_j, r_k),
        halve_w(curve, i, -r_j, -r_k),
        halve_w(curve, i, r_j, -r_k),
        halve_w(curve, i, -r_j, r_k),
    ]


def require_sqrt_minus_one(field: Field, family: str) -> FieldElement:
    i = field.sqrt_minus_one()
    if i is None:
        raise NoSqrtMinusOne(f"{family} needs a square root of -1 in {field}")
    return i


def _other_two_torsion(curve: Curve, p: Point) -> Point:
    """A 2-torsion point outside the cyclic group generated by p."""
    inside = set()
    current = p
    while not current.is_infinity:
        inside.add(current)
        current = add(curve, current, p)
    for w in curve.two_torsion():
        if w not in inside:
            return w
    raise ConsistencyError(f"{p} generates all of E[2] on {curve}")


# order 4


def family_e1(field: Field, lam) -> MarkedCurve:
    """y^2 = (x + lambda^2)(x + 1)x with the order-4 points (lambda, -(lambda+1)lambda) and friends."""
    lam = field(lam)
    require(not lam.is_zero(), "lambda must be nonzero", lam=lam)
    require(lam * lam != field.one, "lambda must not be +-1", lam=lam)
    curve = make_curve(field, -lam * lam, -1, 0)
    r = Point(lam, -(lam + 1) * lam)
    orbit = [r, neg(curve, r), Point(-lam, (lam - 1) * lam), Point(-lam, -(lam - 1) * lam)]
    marked = [MarkedPoint("R", r, 4), MarkedPoint("W1", curve.w(1), 2)]
    return MarkedCurve(
        family="e1",
        params={"lambda": lam},
        curve=curve,
        marked=marked,
        generators=[r, curve.w(1)],
        shape=SHAPE_2_4,
        orbit={"order4": orbit},
    )


def family_full4(field: Field, a, b) -> MarkedCurve:
    """y^2 = (x - (a^2-b^2)^2)(x - (a^2+b^2)^2)x with all twelve points of order 4."""
    a, b = field(a), field(b)
    i = require_sqrt_minus_one(field, "full4")
    require(not a.is_zero() and not b.is_zero(), "a and b must be nonzero", a=a, b=b)
    require(a != b and a != -b, "a must not be +-b", a=a, b=b)
    require(a != i * b and a != -i * b, "a must not be +-i*b", a=a, b=b)
    a2, b2 = a * a, b * b
    curve = make_curve(field, (a2 - b2) ** 2, (a2 + b2) ** 2, 0)
    # roots of a_i - a_j for the three 2-torsion points
    w1 = _w_half_orbit(curve, 1, 2 * i * a * b, a2 - b2)
    w2 = _w_half_orbit(curve, 2, 2 * a * b, a2 + b2)
    w3 = _w_half_orbit(curve, 3, i * (a2 - b2), i * (a2 + b2))
    marked = [
        MarkedPoint(f"Q{k}{n + 1}", pt, 4)
        for k, pts in ((1, w1), (2, w2), (3, w3))
        for n, pt in enumerate(pts)
    ]
    return MarkedCurve(
        family="full4",
        params={"a": a, "b": b},
        curve=curve,
        marked=marked,
        generators=[w1[0], w2[0]],
        shape=SHAPE_4_4,
        orbit={"W1": w1, "W2": w2, "W3": w3},
        extra={"i": i},
    )


def _e2_like(field: Field, family: str, lam: FieldElement, u: FieldElement, v: FieldElement) -> MarkedCurve:
    """Roots (-u^2, -1, 0) with u^2 + v^2 = 1."""
    curve = make_curve(field, -u * u, -1, 0)
    orbit = {"W3": _w_half_orbit(curve, 3, u, field.one)}
    i = field.sqrt_minus_one()
    if i is not None:
        orbit["W1"] = _w_half_orbit(curve, 1, v, i * u)
        orbit["W2"] = _w_half_orbit(curve, 2, i * v, i)
        generators = [orbit["W3"][0], orbit["W2"][0]]
        shape = SHAPE_4_4
    else:
        generators = [orbit["W3"][0], curve.w(1)]
        shape = SHAPE_2_4
    marked = [MarkedPoint("Q1", generators[0], 4)]
    if shape == SHAPE_4_4:
        marked.append(MarkedPoint("Q2", generators[1], 4))
    else:
        marked.append(MarkedPoint("W1", generators[1], 2))
    return MarkedCurve(
        family=family,
        params={"lambda": lam},
        curve=curve,
        marked=marked,
        generators=generators,
        shape=shape,
        orbit=orbit,
        extra={"delta": u},
    )


def _e2_domain(field: Field, lam) -> FieldElement:
    lam = field(lam)
    require(not lam.is_zero(), "lambda must be nonzero", lam=lam)
    require(lam * lam != field.one, "lambda must not be +-1", lam=lam)
    require(not (lam * lam + 1).is_zero(), "lambda^2 + 1 must be nonzero", lam=lam)
    return lam


def family_e2(field: Field, lam) -> MarkedCurve:
    """y^2 = (x + delta^2)(x + 1)x, delta = (lambda^2 - 1)/(lambda^2 + 1).

    Isomorphic to the full4 curve with a = lambda, b = 1 once sqrt(-1) exists;
    then the marked points generate Z/4 + Z/4, otherwise Z/2 + Z/4.
    """
    lam = _e2_domain(field, lam)
    den = lam * lam + 1
    return _e2_like(field, "e2", lam, (lam * lam - 1) / den, 2 * lam / den)


def family_e2_alt(field: Field, lam) -> MarkedCurve:
    """The variant with roots (-(2 lambda)^2/(lambda^2 + 1)^2, -1, 0)."""
    lam = _e2_domain(field, lam)
    den = lam * lam + 1
    return _e2_like(field, "e2-alt", lam, 2 * lam / den, (lam * lam - 1) / den)


# order 8


def e4_lambda(field: Field, c) -> FieldElement:
    c = field(c)
    half = (c - 1 / c) / 2
    return half * half


def family_e4(field: Field, c) -> MarkedCurve:
    """E_{1,lambda} with lambda = ((c - 1/c)/2)^2 and a point R of order 8 above (0, 0).

    The lambda test excludes c = +-1 +- sqrt(2) and c = +-sqrt(-1) without
    asking whether those roots exist in the field.
    """
    c = field(c)
    require(not c.is_zero(), "c must be nonzero", c=c)
    require(c * c != field.one, "c must not be +-1", c=c)
    lam = e4_lambda(field, c)
    require(lam != field.one, "c must not be +-1+-sqrt(2)", c=c)
    require(lam != -field.one, "c must not be +-sqrt(-1)", c=c)
    curve = make_curve(field, -lam * lam, -1, 0)
    inv = 1 / c
    rx = (1 - c) ** 3 * (c + 1) / (4 * c)
    ry = -(c * c - inv * inv) * ((c - 2) ** 2 - inv * inv) * c / 16
    r = Point(rx, ry)
    if not curve.contains(r):
        raise ConsistencyError(f"e4: R = {r} is off {curve}", {"c": str(c)})
    q = double(curve, r)
    if q != Point(lam, (lam + 1) * lam) or double(curve, q) != curve.w(3):
        raise ConsistencyError(f"e4: half chain of {r} does not end at (0, 0)", {"c": str(c)})
    marked = [
        MarkedPoint("R", r, 8),
        MarkedPoint("2R", q, 4),
        MarkedPoint("4R", curve.w(3), 2),
        MarkedPoint("W1", curve.w(1), 2),
    ]
    return MarkedCurve(
        family="e4",
        params={"c": c},
        curve=curve,
        marked=marked,
        generators=[r, curve.w(1)],
        shape=SHAPE_2_8,
        orbit={"half_chain": [r, q, curve.w(3)]},
        extra={"lambda": lam},
    )


# order 3 and 6

FAM3_RELATIONS = (
    "a2a3 = a1a2 + a3a1",
    "a3a1 = a1a2 + a2a3",
    "a1a2 = a2a3 + a3a1",
    "a1a2 + a2a3 + a3a1 = 0",
)


def fam3_halves(a1: FieldElement, a2: FieldElement, a3: FieldElement) -> List[Point]:
    """The four halves of P = (0, a1 a2 a3) on y^2 = (x + a1^2)(x + a2^2)(x + a3^2)."""
    return [
        Point(a2 * a3 - a1 * a2 - a3 * a1, (a1 - a2) * (a2 + a3) * (a3 - a1)),
        Point(a3 * a1 - a1 * a2 - a2 * a3, (a1 - a2) * (a2 - a3) * (a3 + a1)),
        Point(a1 * a2 - a2 * a3 - a3 * a1, (a1 + a2) * (a2 - a3) * (a3 - a1)),
        Point(a1 * a2 + a2 * a3 + a3 * a1, (a1 + a2) * (a2 + a3) * (a3 + a1)),
    ]


def fam3_relation(a1: FieldElement, a2: FieldElement, a3: FieldElement) -> Optional[str]:
    """Which of the four order-3 relations holds, if any."""
    if a1.is_zero() or a2.is_zero() or a3.is_zero():
        return None
    for half, name in zip(fam3_halves(a1, a2, a3), FAM3_RELATIONS):
        if half.x.is_zero():
            return name
    return None


def fam3_general(field: Field, a1, a2, a3, family: str = "fam3") -> Tuple[MarkedCurve, str]:
    """Curve with roots (-a1^2, -a2^2, -a3^2), P = (0, a1 a2 a3) and its four halves.

    Returns the marked curve and "order3" or "plain". When P has order 3 the
    half at x = 0 is -P and the other three halves have order 6.
    """
    a1, a2, a3 = field(a1), field(a2), field(a3)
    s1, s2, s3 = a1 * a1, a2 * a2, a3 * a3
    require(s1 != s2 and s2 != s3 and s1 != s3, "a1^2, a2^2, a3^2 must be pairwise distinct", a1=a1, a2=a2, a3=a3)
    curve = make_curve(field, -s1, -s2, -s3)
    p = Point(field.zero, a1 * a2 * a3)
    halves = fam3_halves(a1, a2, a3)
    for h in halves:
        if not curve.contains(h) or double(curve, h) != p:
            raise ConsistencyError(f"{family}: {h} is not a half of {p}", {"curve": str(curve)})
    relation = fam3_relation(a1, a2, a3)
    params = {"a1": a1, "a2": a2, "a3": a3}
    if relation is None:
        marked = [MarkedPoint("W1", curve.w(1), 2), MarkedPoint("W2", curve.w(2), 2)]
        result = MarkedCurve(
            family=family,
            params=params,
            curve=curve,
            marked=marked,
            generators=[curve.w(1), curve.w(2)],
            shape=SHAPE_2_2,
            orbit={"halves": halves},
            extra={"P": str(p), "classification": "plain"},
        )
        return result, "plain"
    sixes = [h for h in halves if not h.x.is_zero()]
    marked = [MarkedPoint("P", p, 3)]
    marked += [MarkedPoint(f"H{n + 1}", h, 6) for n, h in enumerate(sixes)]
    w = _other_two_torsion(curve, sixes[0])
    result = MarkedCurve(
        family=family,
        params=params,
        curve=curve,
        marked=marked,
        generators=[sixes[0], w],
        shape=SHAPE_2_6,
        orbit={"halves": halves},
        extra={"relation": relation, "classification": "order3"},
    )
    return result, "order3"


def family_e3(field: Field, lam) -> MarkedCurve:
    """Roots (-lambda^2, -1, -(lambda/(lambda+1))^2) with (0, lambda^2/(lambda+1)) of order 3."""
    lam = field(lam)
    require(not lam.is_zero(), "lambda must be nonzero", lam=lam)
    require(lam != field.one and lam != -field.one, "lambda must not be +-1", lam=lam)
    require(lam != field(-2), "lambda must not be -2", lam=lam)
    require(not (2 * lam + 1).is_zero(), "lambda must not be -1/2", lam=lam)
    result, kind = fam3_general(field, lam, 1, lam / (lam + 1), family="e3")
    if kind != "order3":
        raise ConsistencyError(f"e3: (0, lambda^2/(lambda+1)) is not of order 3 for lambda = {lam}")
    result.params = {"lambda": lam}
    return result


# order 5


def e5_betas(a1: FieldElement, a2: FieldElement, a3: FieldElement) -> Tuple[FieldElement, FieldElement, FieldElement]:
    s1, s2, s3 = a1 * a1, a2 * a2, a3 * a3
    return -s1 + s2 + s3, s1 - s2 + s3, s1 + s2 - s3


def family_e5_general(field: Field, a1, a2, a3) -> MarkedCurve:
    """Roots -beta_i^2/4 with P = (0, -beta1 beta2 beta3/8) of order 5.

    The certificate uses level-0 roots beta_i/2 and level-1 roots
    (a2 a3, a1 a3, a1 a2).
    """
    a1, a2, a3 = field(a1), field(a2), field(a3)
    signed = [a1, -a1, a2, -a2, a3, -a3]
    require(len(set(signed)) == 6, "+-a1, +-a2, +-a3 must be six distinct elements", a1=a1, a2=a2, a3=a3)
    betas = e5_betas(a1, a2, a3)
    require(all(not b.is_zero() for b in betas), "every beta_i must be nonzero", a1=a1, a2=a2, a3=a3)
    require(not heron_product(a1, a2, a3).is_zero(), "quartic product must be nonzero", a1=a1, a2=a2, a3=a3)
    require(order5_cubic(a1, a2, a3).is_zero(), "cubic condition must vanish", a1=a1, a2=a2, a3=a3)
    b1, b2, b3 = betas
    curve = make_curve(field, -b1 * b1 / 4, -b2 * b2 / 4, -b3 * b3 / 4)
    p = Point(field.zero, -b1 * b2 * b3 / 8)
    cert = OrderCertificate(5, RootTriple(b1 / 2, b2 / 2, b3 / 2), RootTriple(a2 * a3, a1 * a3, a1 * a2))
    if not cert.verify(curve, p):
        raise ConsistencyError(f"e5-general: certificate failed at {p}", {"curve": str(curve)})
    return MarkedCurve(
        family="e5-general",
        params={"a1": a1, "a2": a2, "a3": a3},
        curve=curve,
        marked=[MarkedPoint("P", p, 5), MarkedPoint("W1", curve.w(1), 2), MarkedPoint("W2", curve.w(2), 2)],
        generators=[p, curve.w(1), curve.w(2)],
        shape=SHAPE_2_10,
        orbit={"multiples": [scalar_mul(curve, n, p) for n in range(1, 5)]},
        extra={"beta": list(betas), "level0": list(cert.level0), "level1": list(cert.level1)},
    )


def e5_lambda_mu(field: Field, xi, eta) -> Tuple[FieldElement, FieldElement]:
    xi, eta = field(xi), field(eta)
    return (xi + eta / xi) / 2, (xi - eta / xi) / 2


def on_e5_parameter_curve(xi: FieldElement, eta: FieldElement) -> bool:
    return eta * eta == xi * (xi * xi + xi - 1)


def _check_lambda_mu(field: Field, lam: FieldElement, mu: FieldElement) -> None:
    one = field.one
    require(not lam.is_zero() and not mu.is_zero(), "lambda and mu must be nonzero", lam=lam, mu=mu)
    require(lam != mu and lam != -mu, "lambda must not be +-mu", lam=lam, mu=mu)
    for combo in (lam + mu, lam - mu):
        require(combo != one and combo != -one, "lambda +- mu must not be +-1", lam=lam, mu=mu)
    require(lam * lam + mu * mu != one, "lambda^2 + mu^2 must not be 1", lam=lam, mu=mu)
    diff = lam * lam - mu * mu
    require(diff != one and diff != -one, "lambda^2 - mu^2 must not be +-1", lam=lam, mu=mu)


def family_e5(field: Field, xi, eta) -> MarkedCurve:
    """Order-5 family over the parameter curve eta^2 = xi(xi^2 + xi - 1).

    Built as the kappa-scaling of the general curve at (lambda, mu, 1) with
    kappa = beta3/2, which puts the third root at -1. In (xi, eta) the roots
    are -(2 xi (1 -+ eta)/D)^2 and -1 with D = (xi - 1)(xi + 1)^2.
    """
    xi, eta = field(xi), field(eta)
    if not on_e5_parameter_curve(xi, eta):
        raise NotOnParameterCurve(
            f"({xi}, {eta}) is not on eta^2 = xi(xi^2 + xi - 1)", {"xi": str(xi), "eta": str(eta)}
        )
    require(not xi.is_zero(), "xi must be nonzero", xi=xi)
    require(xi != field.one and xi != -field.one, "xi must not be +-1", xi=xi)
    require(not (xi * xi + xi - 1).is_zero(), "xi must not be a root of xi^2 + xi - 1", xi=xi)
    lam, mu = e5_lambda_mu(field, xi, eta)
    _check_lambda_mu(field, lam, mu)
    general = family_e5_general(field, lam, mu, 1)
    b3 = general.extra["beta"][2]
    iso = scale_iso(general.curve, b3 / 2)
    curve = iso.target

    d = (xi - 1) * (xi + 1) ** 2
    closed = make_curve(field, -(2 * xi * (1 - eta) / d) ** 2, -(2 * xi * (1 + eta) / d) ** 2, -1)
    if closed.alphas != curve.alphas:
        raise ConsistencyError(f"e5: closed form {closed} disagrees with scaled curve {curve}")
    p = iso.forward(general.point("P"))
    if p != Point(field.zero, -(1 - eta) * (1 + eta) / (b3 * b3)):
        raise ConsistencyError(f"e5: scaled point {p} disagrees with the closed form")
    return MarkedCurve(
        family="e5",
        params={"xi": xi, "eta": eta},
        curve=curve,
        marked=[MarkedPoint("P", p, 5), MarkedPoint("W1", curve.w(1), 2), MarkedPoint("W2", curve.w(2), 2)],
        generators=[p, curve.w(1), curve.w(2)],
        shape=SHAPE_2_10,
        orbit={"multiples": [iso.forward(pt) for pt in general.orbit["multiples"]]},
        extra={"lambda": lam, "mu": mu, "kappa": b3 / 2},
    )


def enumerate_e5_params(field: Field) -> List[Tuple[FieldElement, FieldElement]]:
    """All admissible (xi, eta) over a finite field, sorted."""
    found = []
    for xi in field.elements():
        rhs = xi * (xi * xi + xi - 1)
        roots = field.sqrt(rhs)
        if roots is None:
            continue
        for eta in sorted(set(roots), key=lambda e: e.sort_key()):
            try:
                family_e5(field, xi, eta)
            except BadParameter:
                continue
            found.append((xi, eta))
    logger.debug(f"{len(found)} admissible (xi, eta) over {field}")
    return found


# dispatch

PARAMETER_NAMES: Dict[str, Tuple[str, ...]] = {
    "e1": ("lambda",),
    "e2": ("lambda",),
    "e2-alt": ("lambda",),
    "full4": ("a", "b"),
    "e4": ("c",),
    "e3": ("lambda",),
    "fam3": ("a1", "a2", "a3"),
    "e5-general": ("a1", "a2", "a3"),
    "e5": ("xi", "eta"),
}


def build_family(family: str, field: Field, params: Dict[str, FieldElement]) -> MarkedCurve:
    """Construct a family member from named parameters."""
    names = PARAMETER_NAMES.get(family)
    if names is None:
        raise BadParameter(f"Unknown family {family!r}", {"known": sorted(PARAMETER_NAMES)})
    missing = [n for n in names if n not in params]
    if missing:
        raise BadParameter(f"Family {family} needs parameters {list(names)}", {"missing": missing})
    args = [params[n] for n in names]
    builders = {
        "e1": family_e1,
        "e2": family_e2,
        "e2-alt": family_e2_alt,
        "full4": family_full4,
        "e4": family_e4,
        "e3": family_e3,
        "e5-general": family_e5_general,
        "e5": family_e5,
    }
    if family == "fam3":
        return fam3_general(field, *args)[0]
    return builders[family](field, *args)

