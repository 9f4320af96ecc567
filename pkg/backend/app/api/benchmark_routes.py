from typing import List

from fastapi import APIRouter

from ..services.benchmarks import list_benchmarks, load_benchmark
from ..services.pipeline import expected_row

router = APIRouter()


def _summary(name: str, with_source: bool = False) -> dict:
    entry = load_benchmark(name)
    body = {
        "name": entry.name,
        "description": entry.description,
        "vars": entry.arity,
        "table_vars": entry.table_vars,
        "expected": expected_row(entry),
        "terminator": entry.terminator,
    }
    if with_source:
        body["source"] = entry.source
    return body


@router.get("/benchmarks")
def get_benchmarks() -> List[dict]:
    return [_summary(name) for name in list_benchmarks()]


@router.get("/benchmarks/{name}")
def get_benchmark(name: str) -> dict:
    return _summary(name, with_source=True)
