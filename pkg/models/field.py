"""
Pydantic model describing a field before it is instantiated.
"""
from typing import List, Optional
from pydantic import BaseModel, Field, field_validator, model_validator

FIELD_KINDS = ["prime", "extension", "rational"]


class FieldDescriptor(BaseModel):
    """Kind, characteristic, degree and modulus of a field.

    Primality and irreducibility are checked when the field is built, so
    the matching domain errors (NotPrime, ReducibleModulus, CharTwo) surface
    from make_field rather than as validation errors here.
    """
    model_config = {"frozen": True}

    kind: str
    p: Optional[int] = Field(None, ge=2)
    k: int = Field(default=1, ge=1)
    modulus: Optional[List[int]] = None

    @field_validator("kind")
    @classmethod
    def validate_kind(cls, v):
        if v not in FIELD_KINDS:
            raise ValueError(f"Field kind must be one of: {FIELD_KINDS}")
        return v

    @model_validator(mode="after")
    def validate_shape(self):
        if self.kind == "rational":
            if self.p is not None or self.modulus is not None or self.k != 1:
                raise ValueError("Rational field takes no p, k or modulus")
            return self
        if self.p is None:
            raise ValueError("Finite fields need a characteristic p")
        if self.kind == "prime" and (self.k != 1 or self.modulus is not None):
            raise ValueError("Prime fields have k = 1 and no modulus")
        if self.kind == "extension" and self.modulus is not None:
            if len(self.modulus) != self.k + 1:
                raise ValueError("Modulus needs k + 1 coefficients, constant term first")
            if self.modulus[-1] % self.p != 1:
                raise ValueError("Modulus must be monic")
        return self

    @property
    def order(self) -> Optional[int]:
        if self.kind == "rational":
            return None
        return self.p ** self.k

    def spec_string(self) -> str:
        """Render back into the `Q` | `Fp:<p>` | `Fq:<p>^<k>:<coeffs>` grammar."""
        if self.kind == "rational":
            return "Q"
        if self.kind == "prime":
            return f"Fp:{self.p}"
        coeffs = ",".join(str(c % self.p) for c in self.modulus)
        return f"Fq:{self.p}^{self.k}:{coeffs}"
