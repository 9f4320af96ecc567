"""Report rendering: rich tables for people, TSV for scripts."""

from typing import List, Optional

from rich.console import Console
from rich.table import Table

from ..models.results import BenchRow, CostReport, SynthesisResult, Verdict

TSV_HEADER = ["benchmark", "vars", "hypothesis", "merge", "prefix", "time_s", "status"]


def console() -> Console:
    # stdout carries reports only
    return Console(highlight=False, soft_wrap=True)


def echo(text: str, out: Optional[Console] = None) -> None:
    (out or console()).print(text, markup=False)


def synthesis_lines(result: SynthesisResult) -> List[str]:
    lines = [result.render()]
    stats = result.stats
    lines.append(
        f"candidates tried: {stats.candidates_tried}  arrays checked: {stats.arrays_checked}  "
        f"time: {stats.elapsed:.2f}s"
    )
    if stats.prefix_lengths is not None:
        pl = stats.prefix_lengths
        lines.append(
            f"prefix length over {pl.segmentations} segmentations: "
            f"min {pl.min}  max {pl.max}  mean {pl.mean:.2f}"
        )
    return lines


def verdict_lines(verdict: Verdict) -> List[str]:
    return [verdict.render()]


def cost_table(report: CostReport) -> Table:
    table = Table(show_header=True, header_style="bold cyan", title="Cost model")
    table.add_column("Segment", justify="center")
    table.add_column("s_i", justify="right")
    table.add_column("p_i", justify="right")
    for i, (s, p) in enumerate(zip(report.s, report.p), start=1):
        table.add_row(str(i), str(s), str(p))
    return table


def cost_lines(report: CostReport) -> List[str]:
    summary = report.summary()
    lines = [
        f"T_s={summary['T_s']}  T_p={summary['T_p']}  T_f={summary['T_f']}  T_c={summary['T_c']}  X={summary['X']}"
    ]
    if report.wall_parallel is not None:
        wall = f"wall parallel: {report.wall_parallel * 1000:.2f} ms"
        if report.wall_sequential is not None:
            wall += f"  wall sequential: {report.wall_sequential * 1000:.2f} ms"
        lines.append(wall)
    if report.cross_check is not None:
        lines.append("cross-check: " + ("OK" if report.cross_check else "MISMATCH"))
    return lines


def bench_table(rows: List[BenchRow]) -> Table:
    table = Table(show_header=True, header_style="bold cyan", title="Synthesis results")
    table.add_column("Benchmark")
    table.add_column("#Vars", justify="right")
    table.add_column("Hypothesis")
    table.add_column("merge", justify="center")
    table.add_column("prefix")
    table.add_column("time (s)", justify="right")
    table.add_column("status", justify="center")
    for row in rows:
        style = "green" if row.passed else "red"
        table.add_row(
            row.benchmark,
            str(row.vars),
            row.hypothesis,
            row.merge,
            row.prefix,
            f"{row.time_s:.2f}",
            f"[{style}]{row.status}[/{style}]",
        )
    return table


def bench_tsv(rows: List[BenchRow]) -> str:
    lines = ["\t".join(TSV_HEADER)]
    for row in rows:
        lines.append(
            "\t".join(
                [row.benchmark, str(row.vars), row.hypothesis, row.merge, row.prefix, f"{row.time_s:.3f}", row.status]
            )
        )
    return "\n".join(lines) + "\n"
