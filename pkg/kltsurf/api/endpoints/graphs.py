from fractions import Fraction
from typing import Optional

from fastapi import APIRouter, HTTPException
from starlette.concurrency import run_in_threadpool

from kltsurf.api.deps import graph_and_curve, require_vertex
from kltsurf.schemas.graph import CurveAttachment, DualGraph, LogDiscrepancyVector, ValidationReport
from kltsurf.schemas.responses import (
    DeltaResponse,
    DiscrepancyResponse,
    GraphQuery,
    LcTestResponse,
)
from kltsurf.services import discrepancy as disc
from kltsurf.services.dualgraph import delta, validate

router = APIRouter()

# Exact arithmetic grows quickly with the graph; every handler computes in a worker thread


@router.post("/validate", response_model=ValidationReport)
async def validate_graph(query: GraphQuery):
    """
    Tree-ness, weights, simple edges and negative definiteness of the graph.
    """
    graph, _ = graph_and_curve(query)
    return await run_in_threadpool(validate, graph)


@router.post("/delta", response_model=DeltaResponse)
async def graph_delta(query: GraphQuery):
    """
    Δ of the graph after deleting the vertices listed in `remove`.
    """
    graph, _ = graph_and_curve(query)
    removed = sorted(set(query.remove))
    value = await run_in_threadpool(delta, graph, frozenset(removed))
    return DeltaResponse(removed=removed, delta_gamma=value)


@router.post("/log-discrepancies", response_model=LogDiscrepancyVector)
async def graph_log_discrepancies(query: GraphQuery):
    graph, _ = graph_and_curve(query)
    return await run_in_threadpool(disc.log_discrepancies, graph)


def _discrepancy(
    graph: DualGraph, curve: Optional[CurveAttachment], k: int, delta_: Optional[Fraction]
) -> DiscrepancyResponse:
    response = DiscrepancyResponse(vertex=k, log_discrepancy=disc.log_discrepancy(graph, k))
    if curve is not None:
        response.mult_pullback = disc.mult_pullback(graph, curve, k)
    if delta_ is not None:
        response.boundary_discrepancy = disc.boundary_discrepancy(graph, curve, k, delta_)
    return response


@router.post("/discrepancy", response_model=DiscrepancyResponse)
async def graph_discrepancy(query: GraphQuery):
    """
    a(E_k, Y, 0); with a curve also mult_{E_k} π*C, and with `delta` the boundary discrepancy.
    """
    graph, curve = graph_and_curve(query)
    k = require_vertex(query)
    return await run_in_threadpool(_discrepancy, graph, curve, k, query.delta)


@router.post("/lc-test", response_model=LcTestResponse)
async def graph_lc_test(query: GraphQuery):
    graph, curve = graph_and_curve(query)
    if query.delta is None:
        raise HTTPException(status_code=422, detail="'delta' is required")
    k, value = await run_in_threadpool(disc.min_boundary_discrepancy, graph, curve, query.delta)
    return LcTestResponse(
        delta=query.delta, delta_lc=value >= query.delta, min_vertex=k, min_value=value
    )
