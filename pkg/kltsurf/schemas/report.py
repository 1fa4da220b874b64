from __future__ import annotations

import enum
from typing import Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field, computed_field, model_validator

from kltsurf.schemas.graph import CurveAttachment, DualGraph
from kltsurf.schemas.rational import ExactRational


class OutcomeStatus(str, enum.Enum):
    """Result of one assertion on one instance.

    - PASS    : hypothesis held and the conclusion was checked
    - FAIL    : conclusion violated; both sides are recorded
    - VACUOUS : hypothesis did not hold, nothing to check
    """

    PASS = "PASS"
    FAIL = "FAIL"
    VACUOUS = "VACUOUS"


class KMCase(str, enum.Enum):
    """Shapes of lc configurations (surface germ plus a curve through the point)."""

    CASE1 = "CASE1"  # chain, curve meets both end curves
    CASE2 = "CASE2"  # one-fork tree with two (-2)-leaves, or [2, w, 2] with curve on the middle
    CASE3 = "CASE3"  # chain, curve meets the first curve only

    @classmethod
    def from_tag(cls, tag: str) -> "KMCase":
        normalized = str(tag).strip().upper()
        if normalized in {"1", "2", "3"}:
            normalized = f"CASE{normalized}"
        return cls(normalized)


class ChainSpace(BaseModel):
    """All chains of length <= max_len with weights in 2..max_weight, lexicographic per length."""

    model_config = ConfigDict(frozen=True)

    max_len: int = Field(..., ge=1)
    max_weight: int = Field(..., ge=2)

    @property
    def size(self) -> int:
        base = self.max_weight - 1
        return sum(base**length for length in range(1, self.max_len + 1))


class KMConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    case: KMCase
    graph: DualGraph
    curve: CurveAttachment
    # Vertex where the closed-form boundary value is evaluated (Case 3: minimal i0 with m >= 3)
    focus: Optional[int] = None

    def label(self) -> str:
        return f"{self.case.value}|{self.graph.label()}|{self.curve.label()}"


class AssertionOutcome(BaseModel):
    assertion: str
    status: OutcomeStatus
    relation: Optional[str] = Field(None, description="Checked relation, lhs <relation> rhs")
    lhs: Optional[ExactRational] = None
    rhs: Optional[ExactRational] = None
    detail: Optional[str] = None

    @model_validator(mode="after")
    def failures_carry_witness(self) -> "AssertionOutcome":
        if self.status is OutcomeStatus.FAIL and (self.lhs is None or self.rhs is None):
            raise ValueError("failed assertions must carry both side values")
        return self


class LemmaReport(BaseModel):
    instance_id: str
    lemma: str
    outcomes: List[AssertionOutcome] = Field(default_factory=list)

    @property
    def failed(self) -> bool:
        return any(o.status is OutcomeStatus.FAIL for o in self.outcomes)

    def outcome(self, assertion: str) -> AssertionOutcome:
        for item in self.outcomes:
            if item.assertion == assertion:
                return item
        raise KeyError(assertion)


class AssertionTally(BaseModel):
    passed: int = 0
    failed: int = 0
    vacuous: int = 0

    @property
    def non_vacuous(self) -> int:
        return self.passed + self.failed


class SweepSummary(BaseModel):
    sweep: str
    parameters: Dict[str, str] = Field(default_factory=dict)
    instances: int = 0
    tallies: Dict[str, AssertionTally] = Field(default_factory=dict)
    failure_count: int = 0
    failures: List[LemmaReport] = Field(default_factory=list)
    # Assertions that must see at least one non-vacuous instance for the sweep to count
    require_non_vacuous: List[str] = Field(default_factory=list)

    @property
    def starved(self) -> List[str]:
        return [
            name
            for name in self.require_non_vacuous
            if self.tallies.get(name, AssertionTally()).non_vacuous == 0
        ]

    @computed_field  # type: ignore[misc]
    @property
    def ok(self) -> bool:
        return self.failure_count == 0 and not self.starved

    def summary_line(self) -> str:
        params = " ".join(f"{k}={v}" for k, v in self.parameters.items())
        parts = [
            f"{name}: {t.passed} pass / {t.failed} fail / {t.vacuous} vacuous"
            for name, t in self.tallies.items()
        ]
        verdict = "OK" if self.ok else "FAILED"
        starved = f" (no non-vacuous instances: {', '.join(self.starved)})" if self.starved else ""
        return (
            f"{self.sweep} {params}: {verdict}{starved}; {self.instances} instances; "
            + "; ".join(parts)
        )
