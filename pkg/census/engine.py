"""
Exhaustive census of curves with full rational 2-torsion over small fields.

Curves are grouped by a complete isomorphism invariant; point counts and group
shapes are computed once per class. Corollary checks run in both directions:
every curve of the stated shape is isomorphic to a family member, and every
family member has the stated shape.
"""
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from itertools import combinations
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from arithmetic.errors import BadParameter, ConsistencyError, NotEnumerable, UnsupportedField
from arithmetic.fields import Field, field_of_order, prime_field
from census.corollaries import COROLLARIES, E4_EMPTY_FIELDS, Corollary, corollaries_for
from config.logging_config import get_logger
from config.settings import CENSUS_FIELDS, settings
from curves.curve import Curve, make_curve
from curves.group import count_points, group_structure
from curves.isomorphism import is_isomorphic, iso_class_key
from families.constructors import build_family, enumerate_e5_params
from models.census import CensusReport, CorollaryVerdict, FieldCensus, IsoClassRecord, ShapeClasses
from models.records import GroupShape
from torsion.identities import printed_identity_discrepancy

logger = get_logger("census")

MAX_WITNESSES = 3


@dataclass
class IsoClass:
    key: tuple
    curves: List[Curve] = dc_field(default_factory=list)
    points: int = 0
    shape: Optional[GroupShape] = None

    @property
    def representative(self) -> Curve:
        return min(self.curves, key=lambda c: c.sort_key())

    def to_record(self, witness_params: Optional[List[Dict[str, str]]] = None) -> IsoClassRecord:
        return IsoClassRecord(
            representative=str(self.representative),
            class_size=len(self.curves),
            points=self.points,
            shape=self.shape.as_list(),
            witness_params=witness_params or [],
        )


def enumerate_curves(field: Field) -> Iterator[Curve]:
    """Every curve with three distinct roots in the field, each unordered triple once."""
    if not field.is_finite:
        raise NotEnumerable(f"Cannot enumerate curves over {field}")
    for triple in combinations(list(field.elements()), 3):
        yield make_curve(field, *triple)


class CurveIndex:
    """All curves over one field, grouped into isomorphism classes."""

    def __init__(self, field: Field):
        if not field.is_finite:
            raise NotEnumerable(f"Cannot run a census over {field}")
        if field.order > settings.census_max_q:
            raise UnsupportedField(
                f"q = {field.order} exceeds the census bound {settings.census_max_q}",
                {"q": field.order},
            )
        self.field = field
        self.classes: Dict[tuple, IsoClass] = {}
        self.curve_count = 0
        for curve in enumerate_curves(field):
            key = iso_class_key(curve)
            self.classes.setdefault(key, IsoClass(key)).curves.append(curve)
            self.curve_count += 1
        for iso_class in self.classes.values():
            self._measure(iso_class)
        if sum(len(c.curves) for c in self.classes.values()) != self.curve_count:
            raise ConsistencyError(f"Class sizes over {field} do not add up")
        logger.info(f"{field}: {self.curve_count} curves in {len(self.classes)} classes")

    def _measure(self, iso_class: IsoClass) -> None:
        rep = iso_class.representative
        iso_class.shape, iso_class.points = group_structure(rep)
        if settings.census_count_every_curve:
            for curve in iso_class.curves:
                if count_points(curve) != iso_class.points:
                    raise ConsistencyError(
                        f"{curve} and {rep} share a class but not a point count",
                        {"curve": str(curve), "representative": str(rep)},
                    )

    def class_of(self, curve: Curve) -> IsoClass:
        return self.classes[iso_class_key(curve)]

    def sorted_classes(self) -> List[IsoClass]:
        return sorted(
            self.classes.values(),
            key=lambda c: (c.shape.as_list(), c.representative.sort_key()),
        )

    def with_shape(self, shape: GroupShape) -> List[IsoClass]:
        return [c for c in self.sorted_classes() if c.points == shape.order and c.shape == shape]

    def spot_check_partition(self, samples: int, seed: int) -> None:
        """Compare the invariant against explicit isomorphism witnesses on sampled pairs."""
        rng = random.Random(seed)
        classes = self.sorted_classes()
        for _ in range(samples):
            first = rng.choice(classes)
            a, b = rng.choice(first.curves), rng.choice(first.curves)
            if is_isomorphic(a, b) is None or is_isomorphic(b, a) is None:
                raise ConsistencyError(f"{a} and {b} share a class but are not isomorphic")
            other = rng.choice(classes)
            c = rng.choice(other.curves)
            if (other is first) != (is_isomorphic(a, c) is not None):
                raise ConsistencyError(f"Class invariant disagrees with isomorphism for {a} and {c}")
            # transitivity through a third curve of the same class
            if other is first and is_isomorphic(b, c) is None:
                raise ConsistencyError(f"{b} and {c} break transitivity")


@lru_cache(maxsize=32)
def curve_index(field: Field) -> CurveIndex:
    return CurveIndex(field)


def classify(field: Field, target: GroupShape) -> List[IsoClass]:
    """Isomorphism classes of curves whose group is exactly `target`."""
    return curve_index(field).with_shape(target)


def _parameter_candidates(field: Field, family: str) -> Iterable[Dict[str, object]]:
    if family == "e5":
        for xi, eta in enumerate_e5_params(field):
            yield {"xi": xi, "eta": eta}
        return
    name = "c" if family == "e4" else "lambda"
    for value in field.elements():
        yield {name: value}


def family_members(field: Field, family: str) -> List[Tuple[Dict[str, str], Curve]]:
    """Every admissible parameter of a one-parameter family with its curve."""
    members = []
    for params in _parameter_candidates(field, family):
        try:
            member = build_family(family, field, params)
        except BadParameter:
            continue
        members.append((member.param_strings(), member.curve))
    return members


def _members_by_class(index: CurveIndex, family: str) -> Dict[tuple, List[Dict[str, str]]]:
    by_key: Dict[tuple, List[Dict[str, str]]] = {}
    for params, curve in family_members(index.field, family):
        by_key.setdefault(iso_class_key(curve), []).append(params)
    return by_key


def run_corollary(corollary: Corollary, q: int, expected_shape: Optional[GroupShape] = None) -> CorollaryVerdict:
    """Bidirectional check of one classification statement over F_q."""
    field = field_of_order(q)
    index = curve_index(field)
    shape = expected_shape or corollary.shape
    classes = index.with_shape(shape)
    members = _members_by_class(index, corollary.family)
    failures: List[str] = []

    for iso_class in classes:
        if iso_class.key not in members:
            failures.append(
                f"{iso_class.representative} has group {shape} but is not isomorphic to any {corollary.family} member"
            )
            continue
        params = members[iso_class.key][0]
        witness_member = build_family(corollary.family, field, {k: field.parse(v) for k, v in params.items()})
        if is_isomorphic(iso_class.representative, witness_member.curve) is None:
            raise ConsistencyError(f"No isomorphism witness for class of {iso_class.representative}")

    for key, params_list in sorted(members.items(), key=lambda kv: index.classes[kv[0]].representative.sort_key()):
        iso_class = index.classes[key]
        if iso_class.shape != shape:
            failures.append(
                f"{corollary.family} member {params_list[0]} gives {iso_class.representative} "
                f"with group {iso_class.shape}, expected {shape}"
            )

    if corollary.point_count is not None:
        for iso_class in classes:
            if iso_class.points != corollary.point_count:
                failures.append(
                    f"{iso_class.representative} has {iso_class.points} points, expected {corollary.point_count}"
                )

    if q in corollary.class_counts and len(classes) != corollary.class_counts[q]:
        failures.append(f"{len(classes)} classes with group {shape}, expected {corollary.class_counts[q]}")

    if q in corollary.representatives:
        rep = make_curve(field, *corollary.representatives[q])
        if not any(index.class_of(rep) is c for c in classes):
            failures.append(f"Stated representative {rep} is not among the classes with group {shape}")

    verdict = "fail" if failures else "pass"
    result = CorollaryVerdict(
        corollary=corollary.name,
        field=str(field),
        family=corollary.family,
        shape=shape.as_list(),
        verdict=verdict,
        statement=corollary.statement,
        classes=len(classes),
        family_members=sum(len(v) for v in members.values()),
        point_count=classes[0].points if classes else None,
        counterexample=failures[0] if failures else None,
    )
    if failures:
        logger.warning(f"{corollary.name} over {field}: {failures[0]}")
    else:
        logger.info(f"{corollary.name} over {field}: pass ({len(classes)} classes)")
    return result


def e4_empty_verdict(q: int) -> CorollaryVerdict:
    """The order-8 family has no admissible parameter over the smallest fields."""
    field = field_of_order(q)
    members = family_members(field, "e4")
    return CorollaryVerdict(
        corollary="e4-empty",
        field=str(field),
        family="e4",
        shape=[2, 8],
        verdict="pass" if not members else "fail",
        statement="No admissible c exists over F_q",
        family_members=len(members),
        counterexample=f"admissible c = {members[0][0]['c']}" if members else None,
    )


def census_field(field: Field, families: Sequence[str] = (), shape: Optional[GroupShape] = None) -> FieldCensus:
    """Per-shape class table, with family parameters attached where a member lands in a class."""
    index = curve_index(field)
    witnesses: Dict[tuple, List[Dict[str, str]]] = {}
    for family in families:
        for key, params_list in _members_by_class(index, family).items():
            bucket = witnesses.setdefault(key, [])
            for params in params_list:
                if len(bucket) < MAX_WITNESSES:
                    bucket.append({"family": family, **params})
    by_shape: Dict[Tuple[int, int], List[IsoClassRecord]] = {}
    for iso_class in index.sorted_classes():
        if shape is not None and iso_class.shape != shape:
            continue
        by_shape.setdefault(tuple(iso_class.shape.as_list()), []).append(
            iso_class.to_record(witnesses.get(iso_class.key))
        )
    return FieldCensus(
        field=str(field),
        curves=index.curve_count,
        classes=len(index.classes),
        shapes=[ShapeClasses(shape=list(s), classes=recs) for s, recs in sorted(by_shape.items())],
    )


def _check_fields(q_list: Sequence[int]) -> List[int]:
    checked = []
    for q in q_list:
        if q not in CENSUS_FIELDS or q > settings.census_max_q:
            raise UnsupportedField(f"F_{q} is not a supported census field", {"supported": list(CENSUS_FIELDS)})
        if q not in checked:
            checked.append(q)
    return sorted(checked)


def _run_task(task: Tuple[str, int, Optional[Tuple[int, int]]]) -> CorollaryVerdict:
    name, q, mutated = task
    if name == "e4-empty":
        return e4_empty_verdict(q)
    corollary = next(c for c in COROLLARIES if c.name == name)
    shape = GroupShape(n1=mutated[0], n2=mutated[1]) if mutated else None
    return run_corollary(corollary, q, shape)


def _field_task(q: int) -> FieldCensus:
    field = field_of_order(q)
    index = curve_index(field)
    index.spot_check_partition(samples=20, seed=settings.default_seed + q)
    families = sorted({c.family for c in corollaries_for(q)})
    return census_field(field, families)


def verify_report(q_list: Sequence[int], jobs: int = 1, mutate: Optional[GroupShape] = None) -> CensusReport:
    """Census tables and corollary verdicts for the given field orders.

    `mutate` replaces the expected shape of every checked statement, which must
    then fail; it is the negative control for the checker itself.
    """
    fields = _check_fields(q_list)
    tasks: List[Tuple[str, int, Optional[Tuple[int, int]]]] = []
    mutated = tuple(mutate.as_list()) if mutate else None
    for q in fields:
        for corollary in corollaries_for(q):
            tasks.append((corollary.name, q, mutated))
        if q in E4_EMPTY_FIELDS and mutate is None:
            tasks.append(("e4-empty", q, None))
    logger.info(f"Verifying {len(tasks)} statements over {len(fields)} fields with {jobs} job(s)")

    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            field_reports = list(pool.map(_field_task, fields))
            verdicts = list(pool.map(_run_task, tasks))
    else:
        field_reports = [_field_task(q) for q in fields]
        verdicts = [_run_task(task) for task in tasks]

    check_field = prime_field(settings.random_test_prime)
    printed = printed_identity_discrepancy(check_field)
    notes = [
        f"Printed-sign identities at (1,1,1) over {check_field}: left {printed['m0_left']}, "
        f"printed right {printed['m0_right_printed']}, corrected right {printed['m0_right_corrected']}; "
        f"printed form holds: {printed['printed_holds']}",
        "Only curves with all three roots in F_q are enumerated.",
    ]
    report = CensusReport(field_reports=field_reports, verdicts=verdicts, notes=notes)
    failed = [v for v in verdicts if v.verdict == "fail"]
    if failed:
        logger.warning(f"{len(failed)} of {len(verdicts)} statements failed")
    else:
        logger.info(f"All {len(verdicts)} statements passed")
    return report
