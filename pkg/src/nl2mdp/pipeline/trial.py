"""End-to-end trial driver: stages, execution with repair, scoring."""

from __future__ import annotations

import shutil
from pathlib import Path

from ..config import RunConfig
from ..errors import MissingOracle
from ..evaluation import TrialOutcome, judge_coding, judge_modeling, judge_policy
from ..executor import (
    CodeArtifact,
    ExecLimits,
    TrainingResults,
    extract_code,
    load_results_file,
    repair_loop,
)
from ..gateway import load_suffix, render_prompt, substitute
from ..tasks import TaskSpec
from .records import RunRecord
from .runner import _complete, run_pipeline


def _regenerator(task: TaskSpec, config: RunConfig, backend, record: RunRecord):
    """Repair callback: coding prompt with prior source and error appended."""
    repair_suffix = load_suffix("repair_suffix")

    def regenerate(prior_source: str, error_text: str) -> CodeArtifact:
        prompt = render_prompt("coding", task.description, record.stage_docs)
        prompt += substitute(
            repair_suffix, {"error": error_text, "prior_code": prior_source}
        )
        response = _complete("coding", prompt, backend, record)
        return extract_code(response.text)

    return regenerate


def _load_oracle(config: RunConfig, task_id: str) -> TrainingResults | None:
    criterion = config.criterion_for(task_id)
    if criterion is None or criterion.kind != "oracle_ratio" or not criterion.oracle_results:
        return None
    doc, problems = load_results_file(criterion.oracle_results)
    if problems:
        raise MissingOracle(
            f"oracle results for {task_id} unusable: {'; '.join(problems)}"
        )
    return TrainingResults.from_doc(doc)


def run_trial(
    task: TaskSpec,
    config: RunConfig,
    backend,
    run_id: str,
    runs_root: str | Path = "runs",
    record: RunRecord | None = None,
) -> tuple[RunRecord, TrialOutcome]:
    """One complete trial; outcome persisted as outcome.json in the run dir."""
    record = run_pipeline(task, config, backend, run_id, runs_root, record)

    final_kind = None
    results = None
    if record.coding_raw is not None:
        artifact = extract_code(record.coding_raw)
        repair = repair_loop(
            artifact,
            _regenerator(task, config, backend, record),
            workspace_root=record.root / "exec",
            limits=ExecLimits(config.exec_timeout_s, config.output_cap_bytes),
            max_attempts=config.max_repair_attempts,
            shim_cmd=config.shim_cmd,
        )
        record.execution_history = [
            {"attempt": i, **outcome.as_dict()}
            for i, (_, outcome) in enumerate(repair.history)
        ]
        final_kind = repair.final.kind
        results = repair.final.results
        _publish_final_attempt(record, repair)
        record.save_meta()

    outcome = score_trial(record, config, final_kind, results)
    record.save_outcome(outcome.as_dict())
    return record, outcome


def score_trial(
    record: RunRecord,
    config: RunConfig,
    final_kind: str | None,
    results: TrainingResults | None,
) -> TrialOutcome:
    modeling, m_ev = judge_modeling(record)
    coding, coding_strict, c_ev = judge_coding(final_kind)
    c_ev["strict"] = coding_strict

    policy = False
    p_ev: dict = {}
    if results is not None:
        criterion = config.criterion_for(record.task_id)
        if criterion is None:
            p_ev["failed"] = "no policy criterion configured for task"
        else:
            try:
                policy, p_ev = judge_policy(
                    results, criterion, _load_oracle(config, record.task_id)
                )
            except MissingOracle as exc:
                p_ev = {"failed": str(exc)}
    else:
        p_ev["failed"] = "no successful execution"

    return TrialOutcome(
        modeling=modeling,
        coding=coding,
        policy=policy,
        evidence={
            "modeling": m_ev,
            "coding": c_ev,
            "policy": p_ev,
            "execution_ran": final_kind is not None,
        },
    )


def _publish_final_attempt(record: RunRecord, repair) -> None:
    """Copy the final attempt's code and results to the run-dir top level."""
    final_artifact, final_outcome = repair.history[-1]
    code_dir = record.root / "code"
    code_dir.mkdir(parents=True, exist_ok=True)
    (code_dir / "main.py").write_text(final_artifact.source, encoding="utf-8")
    attempt_dir = record.root / "exec" / f"attempt-{len(repair.history) - 1}"
    src_results = attempt_dir / "results" / "results.json"
    if src_results.is_file():
        dst = record.root / "results"
        dst.mkdir(exist_ok=True)
        shutil.copyfile(src_results, dst / "results.json")
