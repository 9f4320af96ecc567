import pytest

from app.models.bounds import CandidateSpace, RunConfig, VerifBounds
from app.services.benchmarks import list_benchmarks, load_benchmark


@pytest.fixture(scope="session")
def corpus():
    return {name: load_benchmark(name) for name in list_benchmarks()}


@pytest.fixture(scope="session")
def programs(corpus):
    return {name: entry.program for name, entry in corpus.items()}


@pytest.fixture
def bounds():
    return VerifBounds(m=2, max_total_len=6, min_seg_len=1, domain=(0, 1, 2, 3))


@pytest.fixture
def space():
    return CandidateSpace()


@pytest.fixture
def run_config():
    return RunConfig(
        segments=[2, 3],
        max_len=6,
        min_seg_len=1,
        domain=(0, 1, 2, 3),
        max_const_prefix=3,
        max_conjuncts=2,
        jobs=1,
        timeout=120,
    )

