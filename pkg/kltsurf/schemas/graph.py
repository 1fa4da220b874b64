from __future__ import annotations

from typing import List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from kltsurf.schemas.rational import ExactRational

# Vertex set to delete from a graph (1-based labels), e.g. the path between two vertices
SubgraphSelector = frozenset


class DualGraph(BaseModel):
    """Weighted dual graph of a resolution: vertex i carries m_i = -E_i^2.

    Vertices are labelled 1..n. Edges are unordered pairs stored canonically
    (smaller label first, sorted); a repeated pair means intersection multiplicity > 1,
    which the validation report rejects. Connectedness, weight bounds and negative
    definiteness are validation flags, not constructor requirements.
    """

    model_config = ConfigDict(frozen=True)

    weights: Tuple[int, ...] = Field(
        ..., min_length=1, description="m_i = -E_i^2 for vertices 1..n", examples=[[3, 2]]
    )
    edges: Tuple[Tuple[int, int], ...] = Field(
        default=(), description="Unordered vertex pairs, 1-based", examples=[[[1, 2]]]
    )

    @field_validator("weights")
    @classmethod
    def weights_positive(cls, v: Tuple[int, ...]) -> Tuple[int, ...]:
        for index, weight in enumerate(v, start=1):
            if weight < 1:
                raise ValueError(f"vertex {index} has non-positive weight {weight}")
        return v

    @field_validator("edges")
    @classmethod
    def canonical_edges(cls, v: Tuple[Tuple[int, int], ...]) -> Tuple[Tuple[int, int], ...]:
        return tuple(sorted((min(a, b), max(a, b)) for a, b in v))

    @model_validator(mode="after")
    def edges_in_range(self) -> "DualGraph":
        n = len(self.weights)
        for a, b in self.edges:
            if a == b:
                raise ValueError(f"self-loop at vertex {a}")
            if not (1 <= a <= n and 1 <= b <= n):
                raise ValueError(f"edge {a}-{b} references a vertex outside 1..{n}")
        return self

    @property
    def n(self) -> int:
        return len(self.weights)

    @property
    def vertices(self) -> range:
        return range(1, len(self.weights) + 1)

    def weight(self, v: int) -> int:
        return self.weights[v - 1]

    def label(self) -> str:
        """Compact identifier used in reports, e.g. ``w=3,2|e=1-2``."""
        weights = ",".join(str(w) for w in self.weights)
        edges = ",".join(f"{a}-{b}" for a, b in self.edges)
        return f"w={weights}|e={edges}"


class CurveAttachment(BaseModel):
    """Intersection numbers c_j of the strict transform of a curve with each E_j."""

    model_config = ConfigDict(frozen=True)

    c: Tuple[int, ...] = Field(..., min_length=1, examples=[[1, 0]])

    @field_validator("c")
    @classmethod
    def non_negative(cls, v: Tuple[int, ...]) -> Tuple[int, ...]:
        if any(x < 0 for x in v):
            raise ValueError("intersection numbers must be non-negative")
        return v

    def label(self) -> str:
        return "c=" + ",".join(str(x) for x in self.c)


class ValidationReport(BaseModel):
    connected: bool
    is_tree: bool
    simple_edges: bool
    weights_ok: bool
    negative_definite: bool
    leading_minors: List[int] = Field(
        default_factory=list, description="Leading principal minors of -M, exact"
    )
    problems: List[str] = Field(default_factory=list)

    @property
    def valid(self) -> bool:
        return (
            self.is_tree
            and self.simple_edges
            and self.weights_ok
            and self.negative_definite
        )


class LogDiscrepancyVector(BaseModel):
    """Per-vertex log discrepancies a(E_k, Y, 0) together with Δ(Γ)."""

    delta_gamma: int
    values: List[ExactRational]


class GraphPayload(BaseModel):
    """Wire/file form of a graph with an optional curve attachment."""

    weights: List[int] = Field(..., min_length=1, examples=[[2, 2, 2]])
    edges: List[Tuple[int, int]] = Field(default_factory=list, examples=[[[1, 2], [2, 3]]])
    curve: Optional[List[int]] = Field(None, examples=[[1, 0, 0]])

    def graph(self) -> DualGraph:
        return DualGraph(weights=tuple(self.weights), edges=tuple(self.edges))

    def attachment(self) -> Optional[CurveAttachment]:
        if self.curve is None:
            return None
        return CurveAttachment(c=tuple(self.curve))


class GraphDocument(BaseModel):
    """A graph read from a file, with its optional curve attachment."""

    model_config = ConfigDict(frozen=True)

    graph: DualGraph
    curve: Optional[CurveAttachment] = None
    source: Optional[str] = None
