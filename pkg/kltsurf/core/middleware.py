"""
Performance monitoring middleware
"""

import logging
import time
from typing import Callable

from fastapi import Request, Response
from starlette.middleware.base import BaseHTTPMiddleware

from kltsurf.core.config import settings

logger = logging.getLogger(__name__)


class PerformanceMiddleware(BaseHTTPMiddleware):
    """Adds X-Process-Time and logs slow requests (sweeps can take a while)"""

    async def dispatch(self, request: Request, call_next: Callable) -> Response:
        start_time = time.time()
        response = await call_next(request)
        process_time = time.time() - start_time

        response.headers["X-Process-Time"] = f"{process_time:.3f}s"

        if process_time > settings.SLOW_REQUEST_THRESHOLD_SEC:
            logger.warning(
                "Slow request: %s %s took %.2fs",
                request.method,
                request.url.path,
                process_time,
            )

        logger.debug(
            "%s %s - %s - %.3fs",
            request.method,
            request.url.path,
            response.status_code,
            process_time,
        )
        return response
