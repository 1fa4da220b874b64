from typing import List, Tuple

from fastapi import APIRouter
from starlette.concurrency import run_in_threadpool

from kltsurf.api.deps import check_vertex_count
from kltsurf.schemas.quotient import CyclicQuotient
from kltsurf.schemas.responses import HJResponse
from kltsurf.services.dualgraph import chain, delta
from kltsurf.services.hj import cyclic_quotient, hj_expansion

router = APIRouter()


def _expansion_and_delta(q: CyclicQuotient) -> Tuple[List[int], int]:
    expansion = hj_expansion(q)
    check_vertex_count(len(expansion))
    return expansion, delta(chain(expansion))


@router.get("/{n}/{a}", response_model=HJResponse)
async def read_expansion(n: int, a: int):
    """
    Hirzebruch-Jung expansion of n/a and the Δ of the resulting chain.
    """
    q = cyclic_quotient(n, a)
    expansion, value = await run_in_threadpool(_expansion_and_delta, q)
    return HJResponse(n=q.n, a=q.a, expansion=expansion, delta_gamma=value, matches=value == q.n)
