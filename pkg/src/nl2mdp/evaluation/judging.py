"""Per-trial verdicts on the three success criteria.

Modeling success is the automated structural check (human override
supported and logged); coding success is read off the execution outcome,
reported both under the literal no-syntax-error definition and a strict
ran-to-completion one; policy success applies the configured per-task rule
plus a universal convergence check.
"""

from __future__ import annotations

from statistics import fmean

from ..config import PolicyCriterion
from ..errors import MissingOracle
from ..executor import KIND_SUCCESS, KIND_SYNTAX, TrainingResults
from ..ir import serialize, validate_ir


def judge_modeling(record) -> tuple[bool, dict]:
    """True iff every IR stage produced an artifact and validation is clean.

    `record.modeling_override` (bool) flips the verdict when present;
    overrides are kept in the evidence so manual judgments stay visible.
    """
    evidence: dict = {}
    if not record.has_all_ir_stages():
        missing = [
            s for s in (
                "parameter", "objective", "variable", "constraint",
                "objective_modeling", "constraint_modeling", "sar", "env",
            )
            if s not in record.stage_docs
        ]
        evidence["missing_stages"] = missing
        verdict = False
    else:
        ir = serialize.assemble_ir(record.ir_stage_docs())
        report = validate_ir(ir)
        evidence["violations"] = [f.as_dict() for f in report.violations]
        evidence["warning_count"] = len(report.warnings)
        verdict = report.empty

    override = getattr(record, "modeling_override", None)
    if override is not None and bool(override) != verdict:
        evidence["overridden"] = True
        evidence["automated_verdict"] = verdict
        verdict = bool(override)
    return verdict, evidence


def judge_coding(outcome_kind: str | None) -> tuple[bool, bool, dict]:
    """(literal, strict, evidence) coding verdicts from the final outcome.

    Literal: executed without syntax errors.  Strict: ran to completion
    with valid results.  No outcome at all (no code produced) fails both.
    """
    evidence = {"final_outcome": outcome_kind}
    if outcome_kind is None:
        return False, False, evidence
    literal = outcome_kind != KIND_SYNTAX
    strict = outcome_kind == KIND_SUCCESS
    return literal, strict, evidence


def _converged(episode_returns: tuple[float, ...]) -> tuple[bool, dict]:
    n = len(episode_returns)
    k = max(1, n // 10)
    first = fmean(episode_returns[:k])
    last = fmean(episode_returns[-k:])
    return last >= first, {"first_decile_mean": first, "last_decile_mean": last}


def judge_policy(
    results: TrainingResults,
    criterion: PolicyCriterion,
    oracle_results: TrainingResults | None = None,
) -> tuple[bool, dict]:
    """Apply the task's policy rule and the convergence check."""
    evidence: dict = {"rule": criterion.kind}

    converged, conv_ev = _converged(results.episode_returns)
    evidence["convergence"] = conv_ev
    if not converged:
        evidence["failed"] = "convergence"
        return False, evidence

    if not results.eval_returns:
        evidence["failed"] = "no evaluation returns"
        return False, evidence
    mean_eval = fmean(results.eval_returns)
    evidence["mean_eval_return"] = mean_eval

    if criterion.kind == "threshold":
        evidence["threshold"] = criterion.threshold
        return mean_eval >= criterion.threshold, evidence

    if criterion.kind == "oracle_ratio":
        if oracle_results is None or not oracle_results.eval_returns:
            raise MissingOracle(
                f"criterion for {criterion.task_id} needs oracle results"
            )
        oracle_mean = fmean(oracle_results.eval_returns)
        evidence["oracle_mean"] = oracle_mean
        evidence["ratio_required"] = criterion.ratio
        if oracle_mean == 0:
            evidence["failed"] = "oracle mean is zero"
            return False, evidence
        evidence["ratio"] = mean_eval / oracle_mean
        return mean_eval >= criterion.ratio * oracle_mean, evidence

    if criterion.kind == "completion":
        comps = results.extras.get("eval_completions")
        if comps is None:
            comps = [r >= (criterion.return_threshold or 0.0) for r in results.eval_returns]
        fraction = sum(1 for c in comps if c) / len(comps) if comps else 0.0
        evidence["completion_fraction"] = fraction
        evidence["min_fraction"] = criterion.min_fraction
        return fraction >= (criterion.min_fraction or 0.0), evidence

    raise ValueError(f"unknown policy criterion kind {criterion.kind!r}")
