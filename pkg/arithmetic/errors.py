"""
Exception hierarchy for the toolkit.
Every error carries a machine-readable code so the CLI can emit a structured payload.
"""
from typing import Any, Dict, Optional


class CurveToolkitError(Exception):
    """Base class for all domain errors."""

    code = "CurveToolkitError"

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.message = message
        self.details = details or {}


class CharTwo(CurveToolkitError):
    code = "CharTwo"


class NotPrime(CurveToolkitError):
    code = "NotPrime"


class ReducibleModulus(CurveToolkitError):
    code = "ReducibleModulus"


class DivisionByZero(CurveToolkitError, ZeroDivisionError):
    code = "DivisionByZero"


class NotEnumerable(CurveToolkitError):
    code = "NotEnumerable"


class NotDistinct(CurveToolkitError):
    code = "NotDistinct"


class ZeroScale(CurveToolkitError):
    code = "ZeroScale"


class NotTorsionWithinBound(CurveToolkitError):
    code = "NotTorsionWithinBound"


class InfinityBase(CurveToolkitError):
    code = "InfinityBase"


class NotAHalf(CurveToolkitError):
    code = "NotAHalf"


class BadParameter(CurveToolkitError):
    code = "BadParameter"


class NoSqrtMinusOne(CurveToolkitError):
    code = "NoSqrtMinusOne"


class NotOnParameterCurve(CurveToolkitError):
    code = "NotOnParameterCurve"


class UnsupportedField(CurveToolkitError):
    code = "UnsupportedField"


class ParseError(CurveToolkitError):
    """Malformed field, curve, point or parameter literal (usage error)."""

    code = "ParseError"


class ConsistencyError(CurveToolkitError):
    """An identity that must hold did not; signals an arithmetic bug."""

    code = "ConsistencyError"


class HasseViolation(ConsistencyError):
    code = "HasseViolation"
