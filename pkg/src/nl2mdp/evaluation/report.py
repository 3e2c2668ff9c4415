"""Report emitters: success-rate triplets and outcome-distribution tables,
as Markdown and CSV.  Output is byte-stable for identical inputs: tasks
sorted, floats fixed at two decimals."""

from __future__ import annotations

import csv
import io
from pathlib import Path

from .outcomes import FailureDistribution, SuccessTriplet


def triplet_table_md(rows: dict[str, SuccessTriplet]) -> str:
    lines = [
        "| Task | Modeling / Coding / Policy | Trials |",
        "|------|----------------------------|--------|",
    ]
    for task in sorted(rows):
        t = rows[task]
        lines.append(f"| {task} | {t.formatted()} | {t.trials} |")
    return "\n".join(lines) + "\n"


def triplet_table_csv(rows: dict[str, SuccessTriplet]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["task", "modeling_rate", "coding_rate", "policy_rate", "trials"])
    for task in sorted(rows):
        t = rows[task]
        w.writerow(
            [
                task,
                f"{float(t.modeling_rate):.2f}",
                f"{float(t.coding_rate):.2f}",
                f"{float(t.policy_rate):.2f}",
                t.trials,
            ]
        )
    return buf.getvalue()


def _fmt_group(dist: dict, keys: tuple[str, ...]) -> list[str]:
    if not dist:
        return ["" for _ in keys]
    return [f"{dist.get(k, 0.0):.2f}" for k in keys]


def distribution_table_md(rows: dict[str, FailureDistribution]) -> str:
    header = (
        "| Task | P+: M+ | P+: M- | P-: M+C+ | P-: M+C- | P-: M-C+ | P-: M-C- |"
    )
    lines = [header, "|------|--------|--------|----------|----------|----------|----------|"]
    for task in sorted(rows):
        d = rows[task]
        cells = _fmt_group(d.p_success, FailureDistribution.SUCCESS_KEYS) + _fmt_group(
            d.p_failure, FailureDistribution.FAILURE_KEYS
        )
        lines.append("| " + " | ".join([task, *cells]) + " |")
    return "\n".join(lines) + "\n"


def distribution_table_csv(rows: dict[str, FailureDistribution]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(
        ["task", *FailureDistribution.SUCCESS_KEYS, *FailureDistribution.FAILURE_KEYS]
    )
    for task in sorted(rows):
        d = rows[task]
        w.writerow(
            [task]
            + _fmt_group(d.p_success, FailureDistribution.SUCCESS_KEYS)
            + _fmt_group(d.p_failure, FailureDistribution.FAILURE_KEYS)
        )
    return buf.getvalue()


def write_reports(
    out_dir: str | Path,
    triplets: dict[str, SuccessTriplet],
    distributions: dict[str, FailureDistribution],
) -> dict[str, Path]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    md = (
        "# Benchmark report\n\n## Success rates\n\n"
        + triplet_table_md(triplets)
        + "\n## Outcome distribution (success and failure groups normalized separately)\n\n"
        + distribution_table_md(distributions)
    )
    paths = {
        "report.md": out / "report.md",
        "rates.csv": out / "rates.csv",
        "distribution.csv": out / "distribution.csv",
    }
    paths["report.md"].write_text(md, encoding="utf-8")
    paths["rates.csv"].write_text(triplet_table_csv(triplets), encoding="utf-8")
    paths["distribution.csv"].write_text(
        distribution_table_csv(distributions), encoding="utf-8"
    )
    return paths
