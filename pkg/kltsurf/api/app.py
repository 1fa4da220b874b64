import logging
import time
from contextlib import asynccontextmanager
from datetime import datetime

from dotenv import load_dotenv
from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from pydantic import ValidationError

from kltsurf import __version__
from kltsurf.api.endpoints import bounds, graphs, quotients, verify
from kltsurf.core.cache import memo
from kltsurf.core.config import settings
from kltsurf.core.errors import GraphError, KltError, ParameterError
from kltsurf.core.middleware import PerformanceMiddleware
from kltsurf.schemas.responses import ErrorResponse, HealthCheckResponse

load_dotenv()

logger = logging.getLogger(__name__)

START_TIME = time.time()


@asynccontextmanager
async def lifespan(app: FastAPI):
    """Start and stop with an empty memo"""
    logger.info("🚀 Starting kltsurf API...")
    memo.clear()
    logger.info("✅ Memo initialized (max %s entries)", settings.MEMO_MAX_ENTRIES)

    yield

    logger.info("🛑 Shutting down...")
    memo.clear()
    logger.info("✅ Memo cleared")


app = FastAPI(
    title="kltsurf API",
    description="""
    Exact computations on dual graphs of klt surface singularities.

    ## Structure

    * `/graphs/*` - validation, Δ, log discrepancies, δ-lc test
    * `/hj/*` - Hirzebruch-Jung expansions of cyclic quotients
    * `/bounds/*` - lc-threshold and volume bound sheets, grid checks
    * `/verify/*` - bounded verification sweeps

    Every rational travels as an exact `"p/q"` string.
    """,
    version=__version__,
    lifespan=lifespan,
    openapi_tags=[
        {"name": "Graphs", "description": "Dual graph computations"},
        {"name": "Quotients", "description": "Cyclic quotient singularities"},
        {"name": "Bounds", "description": "Closed-form bounds"},
        {"name": "Verify", "description": "Exhaustive verification sweeps"},
    ],
)

app.add_middleware(PerformanceMiddleware)


def _error(status_code: int, code: str, message: str) -> JSONResponse:
    body = ErrorResponse(error_code=code, message=message)
    return JSONResponse(status_code=status_code, content=body.model_dump(mode="json"))


@app.exception_handler(KltError)
async def klt_error_handler(request: Request, exc: KltError):
    code = {GraphError: "GRAPH_ERROR", ParameterError: "PARAMETER_ERROR"}.get(type(exc), "INPUT_ERROR")
    return _error(422, code, str(exc))


@app.exception_handler(ValidationError)
async def validation_error_handler(request: Request, exc: ValidationError):
    first = exc.errors()[0]
    return _error(422, "VALIDATION_ERROR", first["msg"])


# Global exception handler
@app.exception_handler(Exception)
async def global_exception_handler(request: Request, exc: Exception):
    logger.exception("Unhandled error on %s", request.url.path)
    return _error(
        500,
        "INTERNAL_ERROR",
        str(exc) if settings.DEBUG else "Something went wrong",
    )


app.include_router(graphs.router, prefix="/graphs", tags=["Graphs"])
app.include_router(quotients.router, prefix="/hj", tags=["Quotients"])
app.include_router(bounds.router, prefix="/bounds", tags=["Bounds"])
app.include_router(verify.router, prefix="/verify", tags=["Verify"])


@app.get("/", tags=["Root"])
async def root():
    return {
        "message": "kltsurf API",
        "version": __version__,
        "docs": "/docs",
        "status": "operational",
    }


@app.get("/health", tags=["System"], response_model=HealthCheckResponse)
async def health_check():
    """Health check endpoint for monitoring"""
    return HealthCheckResponse(
        status="healthy",
        timestamp=datetime.utcnow(),
        version=__version__,
        memo_entries=len(memo),
        uptime_sec=int(time.time() - START_TIME),
    )
