import pytest

import cli

BOUNDS = ["--segments", "2", "--segments", "3", "--max-len", "5", "--domain", "0,1,2,3", "--jobs", "1"]


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_synthesize_array_count(capsys):
    code, out, _ = run(capsys, "synthesize", "--bench", "array-count", *BOUNDS)
    assert code == 0
    assert out.splitlines()[0] == "SyntNoPrefix +"


def test_synthesize_is_sorted(capsys):
    code, out, _ = run(capsys, "synthesize", "--bench", "is-sorted", *BOUNDS)
    assert code == 0
    assert out.splitlines()[0] == "SyntConstPrefix min prefix_length=1"


def test_synthesize_unknown_program(capsys, tmp_path):
    program = tmp_path / "alternating-sum.gsp"
    program.write_text(
        "(program alternating-sum (state (sign 1) (acc 0))"
        " (step (sign (- 0 sign)) (acc (+ acc (* sign elem)))) (output acc))"
    )
    code, out, _ = run(capsys, "synthesize", "--program", str(program), *BOUNDS)
    assert code == 2
    assert out.splitlines()[0] == "unknown"


def test_verify_valid(capsys):
    code, out, _ = run(capsys, "verify", "--bench", "is-sorted", "--merge", "min", "--prefix-const", "1", *BOUNDS)
    assert code == 0
    assert out.startswith("Valid (")


def test_verify_counterexample(capsys):
    code, out, _ = run(capsys, "verify", "--bench", "is-sorted", "--merge", "min", "--prefix-none", *BOUNDS)
    assert code == 1
    assert out.strip() == "Counterexample [1] [0] expected 0 actual 1"


def test_verify_accepts_operator_alias(capsys):
    code, out, _ = run(capsys, "verify", "--bench", "array-max", "--merge", "add", *BOUNDS)
    assert code == 1
    assert out.startswith("Counterexample")


def test_verify_conditional_prefix(capsys):
    code, _, _ = run(
        capsys, "verify", "--bench", "seen-2-after-1", "--merge", "max", "--prefix-cond", "(= elem 2)", *BOUNDS
    )
    assert code == 0


def test_verify_needs_merge(capsys):
    code, _, err = run(capsys, "verify", "--bench", "is-sorted", *BOUNDS)
    assert code == 1
    assert "--merge" in err


def test_unknown_benchmark(capsys):
    code, _, err = run(capsys, "synthesize", "--bench", "nope", *BOUNDS)
    assert code == 1
    assert "available" in err


def test_bad_prefix_condition(capsys):
    code, _, err = run(capsys, "verify", "--bench", "is-sorted", "--merge", "min", "--prefix-cond", "(= elem", *BOUNDS)
    assert code == 1
    assert "Error" in err


def test_run_array_max(capsys, tmp_path):
    values = tmp_path / "values.txt"
    values.write_text(" ".join(str(i) for i in range(1, 1001)))
    code, out, _ = run(
        capsys, "run", "--bench", "array-max", "--merge", "max", "--input", str(values), "--segments", "4", "--jobs", "4"
    )
    assert code == 0
    assert "output: 1000" in out
    assert "cross-check: OK" in out


def test_run_seen_2_after_1(capsys, tmp_path):
    values = tmp_path / "values.txt"
    values.write_text("2 1\n")
    code, out, _ = run(
        capsys, "run", "--bench", "seen-2-after-1", "--merge", "max", "--prefix-cond", "(= elem 2)",
        "--input", str(values), "--segments", "2",
    )
    assert code == 0
    assert "output: 0" in out


def test_run_synthesizes_when_no_merge_given(capsys, tmp_path):
    values = tmp_path / "values.txt"
    values.write_text(" ".join(str(i) for i in range(100)))
    code, out, _ = run(capsys, "run", "--bench", "is-sorted", "--input", str(values), *BOUNDS)
    assert code == 0
    assert "SyntConstPrefix min prefix_length=1" in out
    assert "output: 1" in out


def test_run_appends_terminator(capsys, tmp_path):
    values = tmp_path / "values.txt"
    values.write_text("1 1 2 2 1 1 2 2")
    code, out, _ = run(
        capsys, "run", "--bench", "alternation-of-11-22", "--merge", "min", "--prefix-cond", "(= elem eof)",
        "--input", str(values), "--segments", "3",
    )
    assert code == 0
    assert "output: 1" in out


def test_bench_tsv(capsys):
    code, out, _ = run(capsys, "bench", "--bench", "array-count", "--format", "tsv", *BOUNDS)
    lines = out.splitlines()
    assert code == 0
    assert lines[0] == "benchmark\tvars\thypothesis\tmerge\tprefix\ttime_s\tstatus"
    fields = lines[1].split("\t")
    assert fields[:5] == ["array-count", "1", "SyntNoPrefix", "+", "-"]
    assert fields[-1] == "PASS"


def test_bench_with_unfit_merge_menu(capsys):
    code, out, _ = run(capsys, "bench", "--bench", "array-max", "--merge-menu", "first,last", "--format", "tsv", *BOUNDS)
    assert code == 1
    assert out.splitlines()[1].endswith("FAIL")


def test_no_command_prints_help(capsys):
    assert cli.main([]) == 1


@pytest.mark.slow
def test_bench_is_deterministic_across_job_counts(capsys):
    def table(jobs):
        code, out, _ = run(capsys, "bench", "--format", "tsv", "--jobs", jobs)
        assert code == 0
        # drop the time column
        return [line.split("\t")[:5] + line.split("\t")[6:] for line in out.splitlines()]

    assert table("1") == table("8")


def test_synthesized_constant_prefix_verifies(capsys):
    bounds = ["--segments", "2", "--segments", "3", "--max-len", "6", "--domain", "0,1,2,3", "--jobs", "1"]
    code, out, _ = run(capsys, "synthesize", "--bench", "number-of-123", *bounds)
    assert code == 0
    assert out.splitlines()[0] == "SyntConstPrefix + prefix_length=2"
    code, out, _ = run(capsys, "verify", "--bench", "number-of-123", "--merge", "+", "--prefix-const", "2", *bounds)
    assert code == 0
    assert out.startswith("Valid (")


def test_run_rejects_segments_shorter_than_constant_prefix(capsys, tmp_path):
    values = tmp_path / "values.txt"
    values.write_text("1 2 3")
    code, _, err = run(
        capsys, "run", "--bench", "number-of-123", "--merge", "+", "--prefix-const", "2",
        "--input", str(values), "--segments", "3",
    )
    assert code == 1
    assert "longer than 2" in err


def test_synthesize_registered_unknown_benchmark(capsys):
    code, out, _ = run(capsys, "synthesize", "--bench", "alternating-sum", *BOUNDS)
    assert code == 2
    assert out.splitlines()[0] == "unknown"
