from fractions import Fraction
from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from kltsurf.schemas.rational import ExactRational

EPSILON_CEILING = Fraction(1, 3)


class BoundParams(BaseModel):
    """The pair (ε, δ) with 0 < δ < ε < 1/3. δ defaults to ε/2 when omitted."""

    model_config = ConfigDict(frozen=True)

    epsilon: ExactRational = Field(..., description="ε in (0, 1/3)", examples=["1/4"])
    delta: Optional[ExactRational] = Field(None, description="δ in (0, ε)", examples=["1/8"])

    @model_validator(mode="after")
    def ordered(self) -> "BoundParams":
        if not (0 < self.epsilon < EPSILON_CEILING):
            raise ValueError(f"epsilon must lie in (0, 1/3), got {self.epsilon}")
        if self.delta is not None and not (0 < self.delta < self.epsilon):
            raise ValueError(f"delta must lie in (0, epsilon), got {self.delta}")
        return self

    @property
    def effective_delta(self) -> Fraction:
        return self.delta if self.delta is not None else self.epsilon / 2


class AuxBounds(BaseModel):
    """Numeric caps used while bounding the exceptional-divisor case (need δ < 1/6)."""

    delta: ExactRational
    c2_floor: ExactRational = Field(..., description="C^2 >= -2/δ")
    rho_cap: ExactRational = Field(..., description="ρ(Y_min/Y) <= 8/δ - 1")
    p_cap: ExactRational = Field(..., description="p <= 1/δ")
    q_cap: ExactRational = Field(..., description="q <= 3/δ - 2")
    pq_cap: ExactRational = Field(..., description="p + q <= 4/δ - 2")
    rho_prime_cap: ExactRational = Field(..., description="ρ(Y'_min/Y') <= 8/δ + 1")
    coeff_floor: ExactRational = Field(..., description="δ/(ρ' + 1) = δ²/(8 + 2δ)")


class BoundSheet(BaseModel):
    epsilon: ExactRational
    delta: ExactRational
    t0_lb: ExactRational
    mu2_lb: ExactRational
    mu2_floor: ExactRational
    M2_ub: ExactRational
    M2_majorant: ExactRational
    divisor_case_lb: ExactRational
    dpf_bound: ExactRational
    dpf_bound_tight: ExactRational
    conic_bound: ExactRational
    rank1_bound: ExactRational
    volume_bound: ExactRational
    hirzebruch_cap: ExactRational = Field(..., description="F_n index cap n <= 2/ε")
    aux: Optional[AuxBounds] = None

    @model_validator(mode="after")
    def volume_absorbs_cases(self) -> "BoundSheet":
        if self.volume_bound != max(self.rank1_bound, self.dpf_bound, self.conic_bound):
            raise ValueError("volume_bound must equal the largest of the case bounds")
        return self


class DeltaChoice(BaseModel):
    """Exploratory δ maximising t0 over a grid; not the canonical δ = ε/2."""

    epsilon: ExactRational
    delta: ExactRational
    t0_lb: ExactRational
    grid: int
    canonical: bool = False


class GridCheck(BaseModel):
    name: str
    passed: int = 0
    failed: int = 0
    first_failure_q: Optional[int] = None


class GridReport(BaseModel):
    q_min: int
    q_max: int
    checks: List[GridCheck] = Field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(check.failed == 0 for check in self.checks)
