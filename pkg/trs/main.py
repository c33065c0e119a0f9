"""
🧮 Twisted RS Toolkit - Main FastAPI Application
Entry point for the HTTP service
"""

import os
import time
from contextlib import asynccontextmanager

import uvicorn
from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from loguru import logger

from trs.api.codes import router as codes_router
from trs.api.simulations import router as simulations_router
from trs.core.config import settings
from trs.core.exceptions import TRSError
from trs.core.logging import setup_logging
from trs.storage.report_store import ReportStore


@asynccontextmanager
async def lifespan(app: FastAPI):
    """Application lifespan events"""
    # Startup
    setup_logging()
    logger.info(f"🚀 Starting {settings.APP_NAME}...")

    # Create necessary directories
    os.makedirs(settings.REPORTS_DIR, exist_ok=True)
    if settings.ENABLE_LOGGING:
        os.makedirs(os.path.dirname(settings.LOG_FILE) or ".", exist_ok=True)

    logger.info("✅ Application startup complete")

    yield

    # Shutdown
    logger.info(f"🔄 Shutting down {settings.APP_NAME}...")


# Create FastAPI application
app = FastAPI(
    title=settings.APP_NAME,
    version=settings.APP_VERSION,
    description="🧮 Twisted Reed-Solomon codes: construction, MDS and GRS checks, duals, decoding",
    docs_url="/docs" if settings.DEBUG else None,
    redoc_url="/redoc" if settings.DEBUG else None,
    lifespan=lifespan,
)


# CORS middleware
if settings.ENABLE_CORS:
    app.add_middleware(
        CORSMiddleware,
        allow_origins=settings.CORS_ORIGINS,
        allow_credentials=True,
        allow_methods=["GET", "POST", "OPTIONS"],
        allow_headers=["*"],
    )


# Request logging middleware
@app.middleware("http")
async def log_requests(request: Request, call_next):
    """Log all requests"""
    start_time = time.perf_counter()
    response = await call_next(request)
    process_time = time.perf_counter() - start_time
    logger.info(f"{request.method} {request.url.path} - {response.status_code} - {process_time:.3f}s")
    response.headers["X-Process-Time"] = str(process_time)
    return response


# Include routers
app.include_router(codes_router, prefix=f"{settings.API_V1_STR}/codes", tags=["codes"])
app.include_router(
    simulations_router, prefix=f"{settings.API_V1_STR}/simulations", tags=["simulations"]
)


# Health check endpoints
@app.get("/health")
async def health_check():
    """General health check"""
    storage_health = ReportStore().health_check()
    return {
        "status": storage_health["status"],
        "timestamp": time.time(),
        "version": settings.APP_VERSION,
        "environment": settings.ENVIRONMENT,
        "services": {"storage": storage_health},
    }


# Root endpoint
@app.get("/")
async def root():
    """Root endpoint with API information"""
    return {
        "message": f"🧮 {settings.APP_NAME} v{settings.APP_VERSION}",
        "description": "Twisted Reed-Solomon code toolkit",
        "docs_url": "/docs" if settings.DEBUG else "Documentation disabled in production",
        "health_check": "/health",
        "api_version": settings.API_V1_STR,
    }


# API information
@app.get(f"{settings.API_V1_STR}/info")
async def api_info():
    """API information and capabilities"""
    return {
        "api_version": "v1",
        "endpoints": {
            "codes": f"{settings.API_V1_STR}/codes/",
            "simulations": f"{settings.API_V1_STR}/simulations/",
            "health": "/health",
        },
        "limits": {
            "max_field_order": settings.MAX_FIELD_ORDER,
            "max_sync_decodes": settings.API_MAX_SYNC_DECODES,
            "census_budget": settings.CENSUS_BUDGET,
            "brute_force_budget": settings.BRUTE_FORCE_BUDGET,
        },
        "simulation_defaults": {
            "trials": settings.SIM_TRIALS,
            "codes": settings.SIM_CODES,
            "threshold": settings.SIM_FAILURE_THRESHOLD,
            "engine": settings.SIM_ENGINE,
        },
    }


# Error handlers
@app.exception_handler(TRSError)
async def toolkit_error_handler(request: Request, exc: TRSError):
    """Toolkit errors carry their own status code"""
    logger.warning(f"{request.method} {request.url.path}: {exc.__class__.__name__}: {exc.message}")
    return JSONResponse(status_code=exc.status_code, content=exc.to_dict())


@app.exception_handler(404)
async def not_found_handler(request: Request, exc):
    """Custom 404 handler"""
    return JSONResponse(
        status_code=404,
        content={
            "error": "Not Found",
            "message": f"The requested resource {request.url.path} was not found",
            "status_code": 404,
        },
    )


@app.exception_handler(500)
async def internal_error_handler(request: Request, exc):
    """Custom 500 handler"""
    return JSONResponse(
        status_code=500,
        content={
            "error": "Internal Server Error",
            "message": "An unexpected error occurred",
            "status_code": 500,
        },
    )


# Development server
if __name__ == "__main__":
    uvicorn.run(
        "trs.main:app",
        host="0.0.0.0",
        port=8000,
        reload=settings.is_development,
        log_level=settings.LOG_LEVEL.lower(),
        access_log=settings.ENABLE_LOGGING,
    )
