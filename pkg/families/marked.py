"""
Curves carrying marked torsion points with declared orders.
"""
from dataclasses import dataclass, field
from typing import Any, Dict, List

from arithmetic.errors import BadParameter, ConsistencyError
from arithmetic.fields import FieldElement
from config.logging_config import get_logger
from curves.curve import Curve, Point
from curves.group import point_order, subgroup_shape
from models.records import MarkedCurveRecord, MarkedPointRecord, GroupShape

logger = get_logger("families")


@dataclass(frozen=True)
class MarkedPoint:
    label: str
    point: Point
    order: int


@dataclass
class MarkedCurve:
    """A family member: curve, marked points, and the subgroup shape the generators span."""

    family: str
    params: Dict[str, FieldElement]
    curve: Curve
    marked: List[MarkedPoint]
    generators: List[Point]
    shape: GroupShape
    orbit: Dict[str, List[Point]] = field(default_factory=dict)
    extra: Dict[str, Any] = field(default_factory=dict)

    def point(self, label: str) -> Point:
        for mp in self.marked:
            if mp.label == label:
                return mp.point
        raise KeyError(label)

    def validate(self) -> "MarkedCurve":
        """Check on-curve, exact declared orders and the generated shape."""
        for mp in self.marked:
            if not self.curve.contains(mp.point):
                raise ConsistencyError(f"{self.family}: {mp.label} = {mp.point} is off the curve")
            actual = point_order(self.curve, mp.point)
            if actual != mp.order:
                raise ConsistencyError(
                    f"{self.family}: {mp.label} has order {actual}, declared {mp.order}",
                    {"point": str(mp.point), "declared": mp.order, "actual": actual},
                )
        generated = subgroup_shape(self.curve, self.generators)
        if generated != self.shape:
            raise ConsistencyError(
                f"{self.family}: generators span {generated}, declared {self.shape}"
            )
        logger.debug(f"{self.family} {self.param_strings()} validated, shape {self.shape}")
        return self

    def param_strings(self) -> Dict[str, str]:
        return {k: str(v) for k, v in self.params.items()}

    def to_record(self) -> MarkedCurveRecord:
        extra = {}
        for key, value in self.extra.items():
            if isinstance(value, (list, tuple)):
                extra[key] = [str(v) for v in value]
            else:
                extra[key] = str(value)
        return MarkedCurveRecord(
            family=self.family,
            params=self.param_strings(),
            curve=self.curve.to_record(),
            marked=[
                MarkedPointRecord(label=mp.label, point=mp.point.to_record(), order=mp.order)
                for mp in self.marked
            ],
            shape=self.shape.as_list(),
            orbit={k: [p.to_record() for p in pts] for k, pts in self.orbit.items()},
            extra=extra,
        )


def require(condition: bool, message: str, **details) -> None:
    """Raise BadParameter naming the failed clause."""
    if not condition:
        raise BadParameter(message, {k: str(v) for k, v in details.items()})
