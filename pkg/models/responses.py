"""
Response envelopes printed by the CLI, and the JSON schema published for them.
"""
from typing import Any, Dict, Generic, List, Optional, TypeVar, Union
from pydantic import BaseModel, Field

from models.census import CensusReport, FieldCensus
from models.records import (
    CertificateRecord,
    CurveRecord,
    GroupRecord,
    HalfRecord,
    KubertCheckRecord,
    KubertRecord,
    MarkedCurveRecord,
    PointRecord,
    RootTripleRecord,
)

ResultT = TypeVar("ResultT")


class ErrorPayload(BaseModel):
    """Structured error for exit code 1 (domain) and 2 (usage)."""
    error: str
    message: str
    details: Dict[str, Any] = Field(default_factory=dict)


class CommandResponse(BaseModel, Generic[ResultT]):
    command: str
    result: ResultT


class HalveResult(BaseModel):
    curve: CurveRecord
    point: PointRecord
    halvable: bool
    halves: List[HalfRecord] = Field(default_factory=list)


class DivideResult(BaseModel):
    curve: CurveRecord
    point: PointRecord
    n: int = Field(..., ge=1)
    points: List[PointRecord] = Field(default_factory=list)


class FlippedHalf(BaseModel):
    i: int = Field(..., ge=1, le=3)
    flipped_half: PointRecord


class RecoverRootsResult(BaseModel):
    triple: RootTripleRecord
    offsets: List[FlippedHalf]


class OrderResult(BaseModel):
    point: PointRecord
    order: int
    holds: bool
    certificate: Optional[CertificateRecord] = None


class IdentityCheckResult(BaseModel):
    """Random-trial failures plus both sides of the identities at (1, 1, 1)."""
    field: str
    samples: int = Field(..., ge=1)
    seed: int
    failures: int = Field(..., ge=0)
    printed: Dict[str, str]


class E5Parameter(BaseModel):
    xi: str
    eta: str


class M84Parameter(BaseModel):
    c: str
    d: str


RESULT_MODELS: Dict[str, Any] = {
    'halve': HalveResult,
    'divide': DivideResult,
    'recover-roots': RecoverRootsResult,
    'order3': OrderResult,
    'order5': OrderResult,
    'group': GroupRecord,
    'identity-check': IdentityCheckResult,
    'family': MarkedCurveRecord,
    'params': List[E5Parameter],
    'solve-m84': List[M84Parameter],
    'kubert': Union[KubertRecord, KubertCheckRecord],
    'census': FieldCensus,
    'verify': CensusReport,
}


def command_schema(command: str) -> Dict[str, Any]:
    """JSON schema of the envelope printed by `command`, or of the error payload for "error"."""
    if command == "error":
        return ErrorPayload.model_json_schema()
    return CommandResponse[RESULT_MODELS[command]].model_json_schema()
