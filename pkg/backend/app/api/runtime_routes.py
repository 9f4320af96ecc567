from fastapi import APIRouter, HTTPException, status

from ..models.api import RunRequest
from ..services import pipeline
from ..services.parser import parse_input_array
from .synthesis_routes import resolve

router = APIRouter()


@router.post("/run")
def run(request: RunRequest):
    target = resolve(request)
    config = request.config.to_run_config()
    if request.decomposition is not None:
        decomposition = request.decomposition.to_decomposition()
    else:
        result = pipeline.synthesize(target, config)
        if not result.found:
            raise HTTPException(
                status_code=status.HTTP_422_UNPROCESSABLE_ENTITY,
                detail="no decomposition found for this program",
            )
        decomposition = result.decomposition
    values = parse_input_array(request.input)
    if target.terminator is not None and (not values or values[-1] != target.terminator):
        values = values + (target.terminator,)
    out, report = pipeline.run_decomposition(target, decomposition, values, request.segments, request.workers)
    return {
        "output": out,
        "decomposition": decomposition.model_dump(mode="json"),
        "report": report.model_dump(mode="json"),
    }
