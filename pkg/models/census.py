"""
Pydantic models for census reports.
"""
from typing import Dict, List, Optional
from pydantic import BaseModel, Field, field_validator

VERDICTS = ["pass", "fail", "not-applicable"]


class IsoClassRecord(BaseModel):
    """One isomorphism class of curves with a given group shape."""
    representative: str
    class_size: int = Field(..., ge=1)
    points: int = Field(..., ge=1)
    shape: List[int]
    witness_params: List[Dict[str, str]] = Field(default_factory=list)


class ShapeClasses(BaseModel):
    shape: List[int]
    classes: List[IsoClassRecord] = Field(default_factory=list)


class CorollaryVerdict(BaseModel):
    """Result of one bidirectional corollary check over one field."""
    corollary: str
    field: str
    family: str
    shape: List[int]
    verdict: str
    statement: str
    classes: int = Field(default=0, ge=0)
    family_members: int = Field(default=0, ge=0)
    point_count: Optional[int] = None
    counterexample: Optional[str] = None

    @field_validator("verdict")
    @classmethod
    def validate_verdict(cls, v):
        if v not in VERDICTS:
            raise ValueError(f"Verdict must be one of: {VERDICTS}")
        return v


class FieldCensus(BaseModel):
    field: str
    curves: int = Field(..., ge=0)
    classes: int = Field(..., ge=0)
    shapes: List[ShapeClasses] = Field(default_factory=list)


class CensusReport(BaseModel):
    """Census over a list of fields plus the corollary verdicts."""
    field_reports: List[FieldCensus] = Field(default_factory=list)
    verdicts: List[CorollaryVerdict] = Field(default_factory=list)
    notes: List[str] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(v.verdict != "fail" for v in self.verdicts)
