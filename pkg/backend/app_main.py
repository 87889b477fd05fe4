#!/usr/bin/env python3
"""
# CoPart service

HTTP access to the cache partitioning and task allocation library.

## Features
- Allocation of a task set with COMP, CASE or a baseline
- NP-FP response times and per-policy core verdicts
- Exhaustive ground truth for small instances

"""
import asyncio
from contextlib import asynccontextmanager

import uvicorn
from dotenv import load_dotenv
from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from loguru import logger

# Import API routes
from app.api.v1.solve import router as solve_router
from app.api.v1.analysis import router as analysis_router
from app.api.v1.verify import router as verify_router

# Import core configuration
from app.core.config import settings
from app.core.exceptions import PreconditionViolation
from app.core.logging import setup_logging
from app.analysis import list_available_tests
from app.allocators import list_available_allocators

# Load environment variables
load_dotenv()


@asynccontextmanager
async def lifespan(app: FastAPI):
    """Manage application startup and shutdown"""
    logger.info(f"🚀 Starting {settings.APP_NAME} {settings.APP_VERSION}")
    logger.info(f"🧩 Policies: {list(list_available_tests())}, algorithms: {list(list_available_allocators())}")
    yield
    logger.info(f"🛑 Shutting down {settings.APP_NAME}")


# Create FastAPI application
app = FastAPI(
    title=settings.APP_NAME,
    description=settings.APP_DESCRIPTION,
    version=settings.APP_VERSION,
    docs_url="/docs" if settings.DEBUG else None,
    redoc_url="/redoc" if settings.DEBUG else None,
    lifespan=lifespan,
)

# Include API routers
app.include_router(solve_router, prefix="/v1/solve", tags=["solve"])
app.include_router(analysis_router, prefix="/v1/analysis", tags=["analysis"])
app.include_router(verify_router, prefix="/v1/verify", tags=["verify"])


@app.get("/")
async def root():
    """Root endpoint with API information"""
    return {
        "name": settings.APP_NAME,
        "version": settings.APP_VERSION,
        "description": settings.APP_DESCRIPTION,
        "status": "active",
        "endpoints": {
            "solve": "/v1/solve",
            "algorithms": "/v1/solve/algorithms",
            "response_times": "/v1/analysis/response-times",
            "schedulable": "/v1/analysis/schedulable",
            "verify": "/v1/verify",
            "docs": "/docs" if settings.DEBUG else "disabled",
            "health": "/health",
        },
    }


@app.get("/health")
async def health_check():
    """Health check endpoint for monitoring"""
    return {
        "status": "healthy",
        "timestamp": asyncio.get_event_loop().time(),
        "policies": sorted(list_available_tests()),
        "algorithms": sorted(list_available_allocators()),
    }


@app.exception_handler(PreconditionViolation)
async def precondition_handler(request: Request, exc: PreconditionViolation):
    logger.warning(f"⚠️ Rejected {request.url.path}: {exc}")
    return JSONResponse(status_code=400, content={"error": "Invalid input", "message": str(exc), "type": "precondition"})


@app.exception_handler(Exception)
async def global_exception_handler(request: Request, exc: Exception):
    """Global exception handler for unhandled errors"""
    logger.error(f"Unhandled exception on {request.url.path}: {exc}")
    return JSONResponse(
        status_code=500,
        content={
            "error": "Internal server error",
            "message": "An unexpected error occurred",
            "type": "internal_error",
        },
    )


# Setup logging
setup_logging()

if __name__ == "__main__":
    uvicorn.run(
        "app_main:app",
        host=settings.HOST,
        port=settings.PORT,
        reload=settings.DEBUG,
        log_level=settings.LOG_LEVEL.lower(),
    )
