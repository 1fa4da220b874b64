from fractions import Fraction
from typing import Optional

from fastapi import APIRouter, HTTPException, Query

from kltsurf.core.serializers import parse_rational
from kltsurf.schemas.bounds import BoundParams, BoundSheet, GridReport
from kltsurf.schemas.responses import AmbroResponse
from kltsurf.services import bounds as bounds_service

router = APIRouter()

SWEEP_MAX_Q = 5000


@router.get("", response_model=BoundSheet)
async def read_bound_sheet(
    epsilon: str = Query(..., description="ε as p/q", examples=["1/4"]),
    delta: Optional[str] = Query(None, description="δ as p/q, default ε/2"),
):
    try:
        params = BoundParams(
            epsilon=parse_rational(epsilon),
            delta=parse_rational(delta) if delta is not None else None,
        )
    except ValueError as e:
        raise HTTPException(status_code=422, detail=str(e))
    return bounds_service.bound_sheet(params)


@router.get("/ambro/{q}", response_model=AmbroResponse)
async def read_ambro(q: int):
    t = bounds_service.ambro_example_t(q)
    return AmbroResponse(
        q=q,
        t=t,
        mu2_lb=bounds_service.mu2_lower_bound(Fraction(1, q)) if q >= 4 else None,
        ratio_to_floor=t * 400 * q**3 / 3,
    )


@router.get("/sweep", response_model=GridReport)
async def read_sweep(qmax: int = Query(..., ge=4, le=SWEEP_MAX_Q), qmin: int = Query(4, ge=4)):
    return bounds_service.sweep(q_max=qmax, q_min=qmin)
