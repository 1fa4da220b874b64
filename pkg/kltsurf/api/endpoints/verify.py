from fastapi import APIRouter, HTTPException
from starlette.concurrency import run_in_threadpool

from kltsurf.core.config import settings
from kltsurf.schemas.report import ChainSpace, SweepSummary
from kltsurf.schemas.responses import ChainLemmaRequest, MultBoundRequest
from kltsurf.services import verify

router = APIRouter()


def _check_size(instances: int) -> None:
    if instances > settings.API_MAX_ENUMERATION:
        raise HTTPException(
            status_code=422,
            detail=f"request would enumerate up to {instances} instances "
            f"(limit {settings.API_MAX_ENUMERATION}); use the CLI for larger sweeps",
        )


@router.post("/chain-lemma", response_model=SweepSummary)
async def run_chain_lemma(request: ChainLemmaRequest):
    """
    Suffix-determinant lemma over every chain in the requested space.
    """
    space = ChainSpace(max_len=request.max_len, max_weight=request.max_weight)
    _check_size(space.size)
    return await run_in_threadpool(verify.sweep_chain_lemma, space, 1)


@router.post("/mult-bound", response_model=SweepSummary)
async def run_mult_bound(request: MultBoundRequest):
    """
    Multiplicity bound over one configuration shape for a single δ.
    """
    # chains of each length bound the number of configurations of each shape
    _check_size(ChainSpace(max_len=request.max_n, max_weight=request.max_weight).size)
    return await run_in_threadpool(
        verify.sweep_mult_bound,
        [request.case],
        request.max_n,
        request.max_weight,
        [request.delta],
        None,
        1,
    )
