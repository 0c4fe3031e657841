"""FastAPI application for the qdag simulator.

Configures middleware and logging and registers the routers.
"""

import logging

from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware

from qdag import __version__
from qdag.config import configure_logging, get_settings

from qdag.api.validate import router as validate_router
from qdag.api.circuits import router as circuits_router
from qdag.api.paths import router as paths_router
from qdag.api.bench import router as bench_router

logger = logging.getLogger(__name__)

app = FastAPI(title="qdag-sim API", version=__version__)

_origins = get_settings().cors_origins
if _origins:
    app.add_middleware(
        CORSMiddleware,
        allow_origins=list(_origins),
        allow_credentials=True,
        allow_methods=["*"],
        allow_headers=["*"]
    )


@app.on_event("startup")
def startup_event():
    """Configure the `qdag` logger from the environment."""
    settings = get_settings()
    configure_logging(settings.log_level)
    logger.info("qdag-sim %s starting, upload cap %d bytes", __version__, settings.max_upload_bytes)


# --------------------------------------------------
# ROUTER REGISTRATION
# --------------------------------------------------
app.include_router(validate_router, prefix="/api", tags=["Validation"])
app.include_router(circuits_router, prefix="/api", tags=["Circuits"])
app.include_router(paths_router, prefix="/api", tags=["Paths"])
app.include_router(bench_router, prefix="/api", tags=["Benchmarks"])


# --------------------------------------------------
# ROOT & HEALTH ENDPOINTS
# --------------------------------------------------
@app.get("/")
def root():
    """Root endpoint returning API information."""
    return {
        "message": "qdag-sim: quantum dynamic programming on DAGs",
        "version": __version__,
    }


@app.get("/health")
def health_check():
    """Health check endpoint."""
    return {"status": "healthy"}


if __name__ == "__main__":
    import uvicorn
    settings = get_settings()
    uvicorn.run(app, host=settings.api_host, port=settings.api_port)
