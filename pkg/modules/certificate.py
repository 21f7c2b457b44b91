#!/usr/bin/env python3
"""
AlgInt Certify - Certificate Model
Machine-readable verdicts produced by every certifier: the verdict, the checked
window, the witnesses found, the bound that was applied and free-form notes.
"""

from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

from pydantic import BaseModel, Field, model_validator


class Verdict(str, Enum):
    INTEGRAL = "Integral"
    NOT_INTEGRAL = "NotIntegral"
    PASS = "Pass"
    FAIL_WITNESS = "FailWitness"
    VANISHING_CLASS = "VanishingClass"
    INCONCLUSIVE = "Inconclusive"
    CONFORMS = "Conforms"


class Witness(BaseModel):
    """A single failing or vanishing index together with the values that show it"""
    index: int
    detail: Dict[str, Any] = Field(default_factory=dict)


class Certificate(BaseModel):
    """Outcome of one certification run"""
    kind: str
    criterion: str
    verdict: Verdict
    window: Optional[Tuple[int, int]] = None
    witnesses: List[Witness] = Field(default_factory=list)
    bound_used: Optional[int] = None
    notes: List[str] = Field(default_factory=list)
    data: Dict[str, Any] = Field(default_factory=dict)

    @model_validator(mode="after")
    def _witness_present(self) -> "Certificate":
        if self.verdict in (Verdict.FAIL_WITNESS, Verdict.NOT_INTEGRAL) and not self.witnesses:
            raise ValueError(f"{self.verdict.value} certificates must carry a witness")
        return self

    @property
    def exit_code(self) -> int:
        return 2 if self.verdict == Verdict.INCONCLUSIVE else 0

    @property
    def first_witness(self) -> Optional[Witness]:
        return self.witnesses[0] if self.witnesses else None

    def to_document(self) -> Dict[str, Any]:
        return self.model_dump(mode="json")

    @classmethod
    def from_document(cls, document: Dict[str, Any]) -> "Certificate":
        return cls.model_validate(document)
