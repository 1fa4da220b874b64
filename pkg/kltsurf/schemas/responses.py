"""Lean response schemas for the HTTP surface."""

from datetime import datetime
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator

from kltsurf.schemas.graph import GraphPayload
from kltsurf.schemas.report import KMCase
from kltsurf.schemas.rational import ExactRational


class BaseResponse(BaseModel):
    model_config = ConfigDict(from_attributes=True)


class HealthCheckResponse(BaseResponse):
    status: str = "healthy"
    timestamp: datetime = Field(default_factory=datetime.utcnow)
    version: str = "1.0.0"
    memo_entries: int = 0
    uptime_sec: int = 0


class ErrorResponse(BaseResponse):
    success: bool = False
    error_code: str
    message: str
    details: Optional[Dict[str, Any]] = None
    timestamp: datetime = Field(default_factory=datetime.utcnow)


class GraphQuery(GraphPayload):
    """Graph payload plus the optional arguments of the single-shot computations."""

    remove: List[int] = Field(default_factory=list, description="Vertices to delete before Δ")
    vertex: Optional[int] = Field(None, ge=1, description="1-based vertex")
    delta: Optional[ExactRational] = Field(None, examples=["1/10"])


class DeltaResponse(BaseResponse):
    removed: List[int]
    delta_gamma: int


class DiscrepancyResponse(BaseResponse):
    vertex: int
    log_discrepancy: ExactRational
    mult_pullback: Optional[ExactRational] = None
    boundary_discrepancy: Optional[ExactRational] = None


class LcTestResponse(BaseResponse):
    delta: ExactRational
    delta_lc: bool
    min_vertex: int
    min_value: ExactRational


class HJResponse(BaseResponse):
    n: int
    a: int
    expansion: List[int]
    delta_gamma: int
    matches: bool


class AmbroResponse(BaseResponse):
    q: int
    t: ExactRational
    mu2_lb: Optional[ExactRational] = None
    ratio_to_floor: ExactRational


class ChainLemmaRequest(BaseModel):
    max_len: int = Field(..., ge=1, examples=[5])
    max_weight: int = Field(..., ge=2, examples=[4])


class MultBoundRequest(BaseModel):
    case: KMCase = Field(..., description="1, 2, 3 or CASE1..CASE3", examples=["3"])
    max_n: int = Field(..., ge=1, examples=[5])
    max_weight: int = Field(..., ge=2, examples=[5])
    delta: ExactRational = Field(..., examples=["1/10"])

    @field_validator("case", mode="before")
    @classmethod
    def case_tag(cls, v):
        return v if isinstance(v, KMCase) else KMCase.from_tag(v)
