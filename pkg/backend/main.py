import logging
from contextlib import asynccontextmanager
from datetime import datetime

import psutil
from fastapi import APIRouter, FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from app.api import benchmark_routes, runtime_routes, synthesis_routes
from app.config import settings
from app.models.errors import (
    BenchmarkNotFound,
    ConfigError,
    DslSyntaxError,
    EvalError,
    GrasspError,
    ProgramValidationError,
    SynthesisTimeout,
    WorkerError,
)
from app.services.benchmarks import list_benchmarks

# Configure logging
logging.basicConfig(level=getattr(logging, settings.LOG_LEVEL.upper(), None) or logging.INFO)
logger = logging.getLogger(__name__)


# --- Lifespan Management ---
@asynccontextmanager
async def lifespan(app: FastAPI):
    logger.info("🚀 GraSSP service is starting up...")
    try:
        available = list_benchmarks()
        logger.info(f"✅ Service is ready ({len(available)} benchmarks, {settings.JOBS} jobs).")
        yield
    finally:
        logger.info("👋 GraSSP service is shutting down.")


# --- App Initialization ---
app = FastAPI(
    title="GraSSP",
    version=settings.PROJECT_VERSION,
    description="Synthesis, verification and parallel execution of fold decompositions.",
    lifespan=lifespan,
)

app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=False,
    allow_methods=["*"],
    allow_headers=["*"],
)


def _error(status_code: int, error: str, exc: Exception) -> JSONResponse:
    return JSONResponse(status_code=status_code, content={"error": error, "detail": str(exc)})


@app.exception_handler(DslSyntaxError)
async def syntax_error_handler(request: Request, exc: DslSyntaxError):
    return JSONResponse(
        status_code=400,
        content={"error": "Syntax error", "detail": exc.message, "line": exc.line, "column": exc.column},
    )


@app.exception_handler(ProgramValidationError)
async def validation_error_handler(request: Request, exc: ProgramValidationError):
    return JSONResponse(status_code=400, content={"error": "Invalid program", "detail": exc.violations})


@app.exception_handler(ConfigError)
async def config_error_handler(request: Request, exc: ConfigError):
    return _error(400, "Invalid configuration", exc)


@app.exception_handler(ValueError)
async def value_error_handler(request: Request, exc: ValueError):
    return _error(400, "Invalid request", exc)


@app.exception_handler(BenchmarkNotFound)
async def benchmark_not_found_handler(request: Request, exc: BenchmarkNotFound):
    return JSONResponse(
        status_code=404,
        content={"error": "Unknown benchmark", "detail": str(exc), "available": exc.available},
    )


@app.exception_handler(EvalError)
async def eval_error_handler(request: Request, exc: EvalError):
    return _error(422, "Evaluation failed", exc)


@app.exception_handler(WorkerError)
async def worker_error_handler(request: Request, exc: WorkerError):
    return JSONResponse(
        status_code=422,
        content={"error": "Worker failed", "detail": str(exc), "segment": exc.segment_index},
    )


@app.exception_handler(SynthesisTimeout)
async def timeout_handler(request: Request, exc: SynthesisTimeout):
    logger.warning(f"Synthesis timed out: {exc}")
    return _error(504, "Synthesis timed out", exc)


@app.exception_handler(GrasspError)
async def grassp_error_handler(request: Request, exc: GrasspError):
    logger.error(f"Unhandled service error: {exc}")
    return _error(500, "Internal error", exc)


# --- API Router ---
api_router = APIRouter(prefix="/api/v1")
api_router.include_router(benchmark_routes.router, tags=["Benchmarks"])
api_router.include_router(synthesis_routes.router, tags=["Synthesis"])
api_router.include_router(runtime_routes.router, tags=["Runtime"])


@api_router.get("/status", tags=["Service"])
def get_status():
    """Service health plus the default verification bounds."""
    return {
        "status": "healthy",
        "service": settings.PROJECT_NAME,
        "version": settings.PROJECT_VERSION,
        "cpu_count": psutil.cpu_count(logical=False) or psutil.cpu_count(),
        "jobs": settings.JOBS,
        "defaults": {
            "segments": settings.SEGMENTS,
            "max_len": settings.MAX_LEN,
            "min_seg_len": settings.MIN_SEG_LEN,
            "domain": settings.DOMAIN,
            "max_const_prefix": settings.MAX_CONST_PREFIX,
            "timeout": settings.TIMEOUT,
        },
        "timestamp": datetime.now().isoformat(),
    }


app.include_router(api_router)


# --- Main Entry Point ---
if __name__ == "__main__":
    import uvicorn

    logger.info("Starting GraSSP service...")
    uvicorn.run(app, host="0.0.0.0", port=8080, reload=False, log_level="info")
