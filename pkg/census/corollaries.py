"""
Classification statements checked by the census.

Each entry reads "over F_q, E(F_q) has shape S if and only if E is isomorphic
to a member of family F". Representatives, class counts and point counts are
extra claims attached to particular fields.
"""
from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

from models.records import GroupShape


@dataclass(frozen=True)
class Corollary:
    name: str
    family: str
    shape: GroupShape
    fields: Tuple[int, ...]
    statement: str
    point_count: Optional[int] = None
    # q -> roots of a curve in the (unique) class
    representatives: Dict[int, Tuple[int, int, int]] = field(default_factory=dict)
    # q -> exact number of isomorphism classes
    class_counts: Dict[int, int] = field(default_factory=dict)

    def with_shape(self, shape: GroupShape) -> "Corollary":
        return Corollary(
            name=self.name,
            family=self.family,
            shape=shape,
            fields=self.fields,
            statement=self.statement,
            point_count=self.point_count,
            representatives=self.representatives,
            class_counts=self.class_counts,
        )


def _shape(n1: int, n2: int) -> GroupShape:
    return GroupShape(n1=n1, n2=n2)


COROLLARIES: Tuple[Corollary, ...] = (
    Corollary(
        name="z2z4-small",
        family="e1",
        shape=_shape(2, 4),
        fields=(5, 7),
        statement="E(F_q) = Z/4 + Z/2 iff E is isomorphic to E_{1,lambda}; one class",
        representatives={5: (1, -1, 0), 7: (-2, -1, 0)},
        class_counts={5: 1, 7: 1},
    ),
    Corollary(
        name="z4z4",
        family="e2",
        shape=_shape(4, 4),
        fields=(9, 13, 17),
        statement="E(F_q) = Z/4 + Z/4 iff E is isomorphic to E_{2,lambda}",
        representatives={9: (1, -1, 0)},
        class_counts={9: 1},
    ),
    Corollary(
        name="z4z8",
        family="e2",
        shape=_shape(4, 8),
        fields=(29,),
        statement="E(F_29) = Z/8 + Z/4 iff E is isomorphic to E_{2,lambda}; |E| = 32",
        point_count=32,
    ),
    Corollary(
        name="z2z8",
        family="e4",
        shape=_shape(2, 8),
        fields=(11, 13, 17, 19),
        statement="E(F_q) = Z/8 + Z/2 iff E is isomorphic to E_{4,c}",
    ),
    Corollary(
        name="z2z24",
        family="e4",
        shape=_shape(2, 24),
        fields=(47,),
        statement="E(F_47) = Z/24 + Z/2 iff E is isomorphic to E_{4,c}; |E| = 48",
        point_count=48,
    ),
    Corollary(
        name="z2z6",
        family="e3",
        shape=_shape(2, 6),
        fields=(7, 9, 11, 13),
        statement="E(F_q) = Z/6 + Z/2 iff E is isomorphic to E_{3,lambda}",
    ),
    Corollary(
        name="z2z12",
        family="e3",
        shape=_shape(2, 12),
        fields=(23,),
        statement="E(F_23) = Z/12 + Z/2 iff E is isomorphic to E_{3,lambda}; |E| = 24",
        point_count=24,
    ),
    Corollary(
        name="z2z10",
        family="e5",
        shape=_shape(2, 10),
        fields=(13, 17, 19, 23, 25, 27),
        statement="E(F_q) = Z/10 + Z/2 iff E is isomorphic to E_{5,xi,eta}",
    ),
    Corollary(
        name="z2z20",
        family="e5",
        shape=_shape(2, 20),
        fields=(31, 37, 41, 43),
        statement="E(F_q) = Z/20 + Z/2 iff E is isomorphic to E_{5,xi,eta}; |E| = 40",
        point_count=40,
    ),
    Corollary(
        name="z2z30",
        family="e5",
        shape=_shape(2, 30),
        fields=(59, 61),
        statement="E(F_q) = Z/30 + Z/2 iff E is isomorphic to E_{5,xi,eta}; |E| = 60",
        point_count=60,
    ),
)

# fields where the order-8 family has no admissible c at all
E4_EMPTY_FIELDS: Tuple[int, ...] = (3, 5, 7, 9)


def corollaries_for(q: int):
    return [c for c in COROLLARIES if q in c.fields]
