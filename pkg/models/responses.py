"""Result records returned by checks and reported by the CLI."""
from enum import Enum
from typing import Dict, List, Optional

from pydantic import BaseModel, Field


class Verdict(str, Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown-syntactic"


class DeterminismResult(BaseModel):
    verdict: Verdict
    rules: Optional[List[int]] = Field(None, description="indices of the overlapping rules")
    witness: Optional[str] = Field(None, description="configuration enabling both rules")
    note: Optional[str] = None

    @property
    def is_yes(self) -> bool:
        return self.verdict == Verdict.YES


class ClassificationReport(BaseModel):
    grammar: str
    declared: str
    strongest: Optional[str]
    classes: List[str] = Field(default_factory=list)
    normal_form: bool = False
    deterministic: Optional[DeterminismResult] = None
    racceptor_deterministic: Optional[bool] = None
    problems: List[str] = Field(default_factory=list)
    notes: List[str] = Field(default_factory=list)

    @property
    def consistent(self) -> bool:
        return not self.problems


class AcceptOutcome(str, Enum):
    ACCEPTED = "Accepted"
    REJECTED_WITHIN_BOUNDS = "RejectedWithinBounds"
    EXHAUSTED = "Exhausted"


class EquivResult(BaseModel):
    equal: bool
    up_to: int
    witness: Optional[str] = None
    only_in: Optional[str] = Field(None, description="'left' or 'right' for the witness")
    relation: bool = False

    def summary(self) -> str:
        if self.equal:
            return f"EQUAL up to {self.up_to}"
        return f"DIFFERS: {self.witness} (only in {self.only_in})"


class FunctionalityReport(BaseModel):
    functional: bool
    inputs_checked: int
    witness_input: Optional[str] = None
    outputs: List[str] = Field(default_factory=list)


class PrefixFreeReport(BaseModel):
    prefix_free: bool
    checked_up_to: int
    witness: Optional[List[str]] = None


class ContinuityReport(BaseModel):
    holds: bool
    items_checked: int
    witnesses: Dict[str, List[str]] = Field(default_factory=dict)
    missing: List[str] = Field(default_factory=list)
