"""
Kubert normal forms y^2 + (1 - a) x y - b y = x^3 - b x^2 and their
conversion to the split-root families.

    E1:  a = 0, b = t^2 - 1/16                      ->  lambda = (t - 1/4)/(t + 1/4)
    E3:  a = (10 - 2t)/(t^2 - 9),
         b = -2 (t - 1)^2 (t - 5)/(t^2 - 9)^2       ->  lambda = -(t - 5)/(t - 1)
    E4:  a = U/A, b = U/B with U = (2t + 1)(8t^2 + 4t + 1),
         A = 2 (4t + 1)(8t^2 - 1) t, B = (8t^2 - 1)^2  ->  c = 4t + 1

Verification rebuilds both curves and looks for an isomorphism.
"""
import random
from dataclasses import dataclass
from typing import List, Optional, Tuple

from arithmetic.errors import BadParameter, ConsistencyError, NotEnumerable
from arithmetic.fields import Field, FieldElement
from config.logging_config import get_logger
from config.settings import KUBERT_KINDS
from curves.curve import Curve, make_curve
from curves.isomorphism import IsoWitness, is_isomorphic
from families.constructors import family_e1, family_e3, family_e4
from families.marked import require
from models.records import KubertCheckRecord, KubertRecord

logger = get_logger("kubert")


@dataclass
class KubertConversion:
    kind: str
    t: FieldElement
    parameter: str
    value: FieldElement
    kubert_curve: Optional[Curve] = None
    witness: Optional[IsoWitness] = None

    def to_record(self) -> KubertRecord:
        return KubertRecord(
            kind=self.kind,
            t=str(self.t),
            parameter=self.parameter,
            value=str(self.value),
            kubert_curve=self.kubert_curve.to_record() if self.kubert_curve else None,
            witness=self.witness.to_record() if self.witness else None,
        )


def kubert_coefficients(field: Field, kind: str, t) -> Tuple[FieldElement, FieldElement]:
    """(a, b) of the Kubert form for parameter t."""
    t = field(t)
    if kind == "e1":
        quarter = field(1) / 4
        require(t != quarter and t != -quarter, "t must not be +-1/4", t=t)
        return field.zero, t * t - quarter * quarter
    if kind == "e3":
        require(t != field(1) and t != field(5), "t must not be 1 or 5", t=t)
        require(not (t * t - 9).is_zero(), "t must not be +-3", t=t)
        den = t * t - 9
        return (10 - 2 * t) / den, -2 * (t - 1) ** 2 * (t - 5) / (den * den)
    if kind == "e4":
        require(not t.is_zero(), "t must be nonzero", t=t)
        require(not (2 * t + 1).is_zero(), "t must not be -1/2", t=t)
        require(not (4 * t + 1).is_zero(), "t must not be -1/4", t=t)
        require(not (8 * t * t - 1).is_zero(), "8t^2 - 1 must be nonzero", t=t)
        u = (2 * t + 1) * (8 * t * t + 4 * t + 1)
        require(not u.is_zero(), "8t^2 + 4t + 1 must be nonzero", t=t)
        a_den = 2 * (4 * t + 1) * (8 * t * t - 1) * t
        b_den = (8 * t * t - 1) ** 2
        return u / a_den, u / b_den
    raise BadParameter(f"Unknown Kubert kind {kind!r}", {"known": KUBERT_KINDS})


def kubert_split_curve(field: Field, a, b) -> Curve:
    """The Kubert curve with the xy and y terms completed away, in split-root form.

    y'^2 = x^3 + (a2 + a1^2/4) x^2 + (a1 a3/2) x + a3^2/4 with a1 = 1 - a,
    a2 = a3 = -b. The cubic's roots are found by scanning the field.
    """
    a, b = field(a), field(b)
    a1, a2, a3 = 1 - a, -b, -b
    c2 = a2 + a1 * a1 / 4
    c1 = a1 * a3 / 2
    c0 = a3 * a3 / 4
    if not field.is_finite:
        raise NotEnumerable(f"Root search for the Kubert cubic needs a finite field, got {field}")
    roots = [x for x in field.elements() if (((x + c2) * x + c1) * x + c0).is_zero()]
    if len(roots) != 3:
        raise BadParameter(
            f"Kubert cubic has {len(roots)} distinct roots in {field}, need 3",
            {"a": str(a), "b": str(b)},
        )
    return make_curve(field, *roots)


_TARGETS = {
    "e1": ("lambda", lambda field, t: (field(t) - field(1) / 4) / (field(t) + field(1) / 4), family_e1),
    "e3": ("lambda", lambda field, t: -(field(t) - 5) / (field(t) - 1), family_e3),
    "e4": ("c", lambda field, t: 4 * field(t) + 1, family_e4),
}


def kubert_convert(field: Field, kind: str, t, verify: bool = False) -> KubertConversion:
    """Map Kubert parameter t to the family parameter; `verify` checks the isomorphism.

    Once t is admissible the Kubert cubic must split, so a failed root
    search during verification is a ConsistencyError.
    """
    if kind not in _TARGETS:
        raise BadParameter(f"Unknown Kubert kind {kind!r}", {"known": KUBERT_KINDS})
    t = field(t)
    a, b = kubert_coefficients(field, kind, t)
    name, convert, build = _TARGETS[kind]
    value = convert(field, t)
    member = build(field, value)
    conversion = KubertConversion(kind=kind, t=t, parameter=name, value=value)
    if verify:
        try:
            kubert = kubert_split_curve(field, a, b)
        except BadParameter as e:
            raise ConsistencyError(
                f"Kubert {kind} cubic at admissible t = {t} does not split: {e}",
                {"t": str(t), "family": str(member.curve)},
            ) from e
        witness = is_isomorphic(kubert, member.curve)
        if witness is None:
            raise ConsistencyError(
                f"Kubert {kind} curve at t = {t} is not isomorphic to {member.curve}",
                {"kubert": str(kubert), "family": str(member.curve)},
            )
        conversion.kubert_curve = kubert
        conversion.witness = witness
    return conversion


def kubert_random_check(field: Field, kind: str, samples: int, seed: int) -> KubertCheckRecord:
    """Verify `samples` t drawn from the admissible parameters; every verification failure counts."""
    require(samples > 0, "samples must be positive", samples=samples)
    pool = admissible_t(field, kind)
    if not pool:
        raise BadParameter(f"No admissible Kubert {kind} parameters in {field}")
    rng = random.Random(seed)
    failed = []
    for t in rng.choices(pool, k=samples):
        try:
            kubert_convert(field, kind, t, verify=True)
        except ConsistencyError:
            failed.append(t)
            logger.warning(f"Kubert {kind} check failed at t = {t} over {field}")
    return KubertCheckRecord(
        kind=kind,
        field=str(field),
        seed=seed,
        samples=samples,
        failures=len(failed),
        failed_t=[str(t) for t in failed],
    )


def admissible_t(field: Field, kind: str) -> List[FieldElement]:
    """Every t with an admissible conversion over a finite field."""
    result = []
    for t in field.elements():
        try:
            kubert_convert(field, kind, t)
        except BadParameter:
            continue
        result.append(t)
    return result
