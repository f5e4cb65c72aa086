"""
Pydantic models for serializing curves, points and computation results.
Field elements are carried as their printed form so JSON stays exact.
"""
from typing import Any, Dict, List, Optional
from pydantic import BaseModel, Field, model_validator


class GroupShape(BaseModel):
    """E(F_q) = Z/n1 + Z/n2 with n1 | n2. The form "Z/2m + Z/2" renders as (2, 2m)."""
    model_config = {"frozen": True}

    n1: int = Field(..., ge=1)
    n2: int = Field(..., ge=1)

    @model_validator(mode="after")
    def validate_divides(self):
        if self.n2 % self.n1 != 0:
            raise ValueError(f"n1 = {self.n1} must divide n2 = {self.n2}")
        return self

    @property
    def order(self) -> int:
        return self.n1 * self.n2

    def contains(self, other: "GroupShape") -> bool:
        """True when Z/n1 + Z/n2 has a subgroup isomorphic to `other`."""
        return self.n1 % other.n1 == 0 and self.n2 % other.n2 == 0

    @classmethod
    def parse(cls, text: str) -> "GroupShape":
        left, _, right = text.lower().partition("x")
        return cls(n1=int(left), n2=int(right))

    def __str__(self) -> str:
        return f"{self.n1}x{self.n2}"

    def as_list(self) -> List[int]:
        return [self.n1, self.n2]


class PointRecord(BaseModel):
    """Affine point or infinity."""
    infinity: bool = False
    x: Optional[str] = None
    y: Optional[str] = None


class CurveRecord(BaseModel):
    field: str
    alphas: List[str]


class RootTripleRecord(BaseModel):
    r: List[str] = Field(..., min_length=3, max_length=3)


class OffsetRecord(BaseModel):
    """Sign-theorem data for one index i: the flipped half and its offset W_i."""
    i: int = Field(..., ge=1, le=3)
    flipped_half: PointRecord
    offset: PointRecord


class HalfRecord(BaseModel):
    point: PointRecord
    triple: RootTripleRecord
    offsets: List[OffsetRecord] = Field(default_factory=list)


class IsoWitnessRecord(BaseModel):
    u: str
    r: str
    sigma: List[int]


class CertificateRecord(BaseModel):
    order: int
    level0: List[str]
    level1: Optional[List[str]] = None


class MarkedPointRecord(BaseModel):
    label: str
    point: PointRecord
    order: int


class MarkedCurveRecord(BaseModel):
    family: str
    params: Dict[str, str]
    curve: CurveRecord
    marked: List[MarkedPointRecord]
    shape: List[int]
    orbit: Dict[str, List[PointRecord]] = Field(default_factory=dict)
    extra: Dict[str, Any] = Field(default_factory=dict)


class GroupRecord(BaseModel):
    curve: CurveRecord
    points: int
    shape: List[int]
    hasse_interval: List[float]


class KubertRecord(BaseModel):
    """A Kubert parameter t mapped to the split-root family parameter."""
    kind: str
    t: str
    parameter: str
    value: str
    kubert_curve: Optional[CurveRecord] = None
    witness: Optional[IsoWitnessRecord] = None


class KubertCheckRecord(BaseModel):
    kind: str
    field: str
    seed: int
    samples: int = Field(..., ge=0)
    failures: int = Field(..., ge=0)
    failed_t: List[str] = Field(default_factory=list)
