from __future__ import annotations

from fastapi import HTTPException

from kltsurf.core.config import settings
from kltsurf.schemas.graph import CurveAttachment, DualGraph
from kltsurf.schemas.responses import GraphQuery


def check_vertex_count(n: int) -> None:
    if n > settings.API_MAX_VERTICES:
        raise HTTPException(
            status_code=422,
            detail=f"graph has {n} vertices (limit {settings.API_MAX_VERTICES}); "
            "use the CLI for larger graphs",
        )


def graph_and_curve(query: GraphQuery) -> tuple[DualGraph, CurveAttachment | None]:
    graph = query.graph()
    check_vertex_count(graph.n)
    curve = query.attachment()
    if curve is not None and len(curve.c) != graph.n:
        raise HTTPException(
            status_code=422,
            detail=f"curve has {len(curve.c)} entries for {graph.n} vertices",
        )
    return graph, curve


def require_vertex(query: GraphQuery) -> int:
    if query.vertex is None:
        raise HTTPException(status_code=422, detail="'vertex' is required")
    return query.vertex
