from fastapi import APIRouter

from ..models.api import ProgramRef, SynthesizeRequest, VerifyRequest
from ..services import pipeline

router = APIRouter()


def resolve(ref: ProgramRef) -> pipeline.Target:
    if ref.benchmark is not None:
        return pipeline.target_from_benchmark(ref.benchmark)
    return pipeline.target_from_source(ref.program)


# Results are dumped here rather than through response_model: prefix predicates
# serialize to text and do not validate back into expression trees.
@router.post("/synthesize")
def synthesize(request: SynthesizeRequest) -> dict:
    result = pipeline.synthesize(resolve(request), request.config.to_run_config())
    return result.model_dump(mode="json")


@router.post("/verify")
def verify(request: VerifyRequest) -> dict:
    verdict = pipeline.verify_decomposition(
        resolve(request),
        request.decomposition.to_decomposition(),
        request.config.to_run_config(),
    )
    return verdict.model_dump(mode="json")
