"""The stage state machine.

Runs agents in dependency order, re-asks on parse/validation failures,
applies the error-correction loop where enabled, parks on clarification,
and persists every artifact as soon as it exists.
"""

from __future__ import annotations

from pathlib import Path

from ..config import RunConfig
from ..errors import (
    MalformedPayload,
    NoCodeFound,
    NoPayloadFound,
    PendingClarification,
    ShapeSyntaxError,
    StageExhausted,
)
from ..executor.extract import extract_code
from ..gateway import load_suffix, prompt_digest, render_prompt, substitute
from ..ir import extract_latex_symbols, parse_structured_block, serialize, validate_ir
from ..ir.lexicon import classify_undeclared
from ..ir.types import ACTION_KINDS, CAMEL_CASE_RE, ENV_MODES, PARAMETER_TYPES
from ..tasks import TaskSpec
from .confidence import (
    VERDICT_ACCEPT,
    VERDICT_CLARIFY,
    build_report,
    make_clarification,
    parse_confidence,
)
from .records import (
    STATUS_COMPLETE,
    STATUS_PARKED,
    AttemptRecord,
    RunRecord,
    StageResult,
)
from .stages import IR_STAGE_ORDER, STAGE_ORDER, StageId


def _declared_symbols(stage_docs: dict[str, dict]) -> set[str]:
    declared: set[str] = set()
    for rec in stage_docs.get("parameter", {}).get("parameters", []):
        declared.add(rec["SYMBOL"])
    for rec in stage_docs.get("variable", {}).get("variables", []):
        declared.add(rec["SYMBOL"])
    return declared


def _formula_violations(formula: str, declared: set[str]) -> list[str]:
    out = []
    for sym in sorted(extract_latex_symbols(formula)):
        if sym in declared or classify_undeclared(sym) is not None:
            continue
        out.append(f"formula references undeclared symbol {sym!r}")
    return out


def stage_local_violations(stage: str, result, stage_docs: dict[str, dict]) -> list[str]:
    """Checks a stage can satisfy on its own, used to drive re-asks.

    Whole-IR checks (cross-stage shape resolution and the rest) run once at
    assembly; a failure here means the model must redo this stage.
    """
    violations: list[str] = []

    if stage == "parameter":
        seen: set[str] = set()
        for p in result.artifact:
            if p.symbol in seen:
                violations.append(f"duplicate parameter symbol {p.symbol!r}")
            seen.add(p.symbol)
            if not CAMEL_CASE_RE.match(p.symbol):
                violations.append(f"parameter symbol {p.symbol!r} is not CamelCase")
            if p.type not in PARAMETER_TYPES:
                violations.append(
                    f"parameter {p.symbol!r} type {p.type!r} not in {PARAMETER_TYPES}"
                )

    elif stage == "variable":
        declared = {
            rec["SYMBOL"] for rec in stage_docs.get("parameter", {}).get("parameters", [])
        }
        seen = set()
        for v in result.artifact:
            if v.symbol in seen or v.symbol in declared:
                violations.append(f"variable symbol {v.symbol!r} is not unique")
            seen.add(v.symbol)
            if not CAMEL_CASE_RE.match(v.symbol):
                violations.append(f"variable symbol {v.symbol!r} is not CamelCase")

    elif stage == "objective_modeling":
        violations.extend(
            _formula_violations(result.artifact, _declared_symbols(stage_docs))
        )

    elif stage == "constraint_modeling":
        declared = _declared_symbols(stage_docs)
        for formula in result.artifact:
            violations.extend(_formula_violations(formula, declared))
        n_constraints = len(stage_docs.get("constraint", {}).get("constraints", []))
        if len(result.artifact) != n_constraints:
            result.warnings.append(
                f"{len(result.artifact)} formulas for {n_constraints} constraints; paired in order"
            )

    elif stage == "sar":
        declared = _declared_symbols(stage_docs)
        sar = result.artifact
        for sym in (*sar.state.variables, *sar.action.variables):
            if sym in declared or (sym and sym[0].islower()):
                continue
            if classify_undeclared(sym) is None:
                violations.append(f"SAR references undeclared symbol {sym!r}")
        if sar.action.kind not in ACTION_KINDS:
            violations.append(f"action kind {sar.action.kind!r} not in {ACTION_KINDS}")
        violations.extend(
            _formula_violations(sar.reward.formula, declared)
        )

    elif stage == "env":
        env = result.artifact
        if env.mode not in ENV_MODES:
            violations.append(f"env mode {env.mode!r} not in {ENV_MODES}")
        elif env.mode == "prebuilt" and not env.prebuilt_id:
            violations.append("prebuilt env without a catalog identifier")
        elif env.mode == "custom" and not env.transition_logic.strip():
            violations.append("custom env without transition logic")

    return violations


def _parse_stage(stage: str, text: str):
    """Stage response -> (ParseResult-like, doc). Coding extracts source."""
    if stage == "coding":
        artifact = extract_code(text)
        doc = {"entrypoint": artifact.entrypoint, "source_bytes": len(artifact.source)}

        class _R:
            pass

        r = _R()
        r.artifact = artifact
        r.doc = doc
        r.warnings = list(artifact.warnings)
        return r
    return parse_structured_block(text, stage)


def run_stage(
    stage: str,
    description: str,
    stage_docs: dict[str, dict],
    config: RunConfig,
    backend,
    record: RunRecord,
    extra_suffix: str = "",
) -> StageResult:
    """One stage: render, complete, parse, validate; re-ask on failure.

    The violation text is appended to the prompt on each re-ask, up to
    config.max_stage_reasks re-asks after the initial attempt.
    """
    base_prompt = render_prompt(stage, description, stage_docs) + extra_suffix
    violation_suffix = load_suffix("violation_suffix")
    attempts: list[AttemptRecord] = []
    prompt = base_prompt

    for _ in range(config.max_stage_reasks + 1):
        response = _complete(stage, prompt, backend, record)
        digest = prompt_digest(stage, prompt)
        try:
            parsed = _parse_stage(stage, response.text)
        except (NoPayloadFound, MalformedPayload, ShapeSyntaxError, NoCodeFound) as exc:
            attempts.append(AttemptRecord(digest, response.text, error=str(exc)))
            prompt = base_prompt + substitute(violation_suffix, {"violations": str(exc)})
            continue

        sr = StageResult(stage=stage, attempts=attempts, artifact=parsed.artifact,
                         doc=parsed.doc, warnings=list(parsed.warnings))
        violations = stage_local_violations(stage, sr, stage_docs)
        if violations:
            attempts.append(AttemptRecord(digest, response.text, error="; ".join(violations)))
            prompt = base_prompt + substitute(
                violation_suffix, {"violations": "\n".join(violations)}
            )
            continue

        attempts.append(AttemptRecord(digest, response.text))
        sr.attempts = attempts
        return sr

    raise StageExhausted(stage, len(attempts))


def _complete(stage: str, prompt: str, backend, record: RunRecord):
    response = backend.complete(stage, prompt)
    ordinal = sum(1 for r in record.transcript_refs if r["stage"] == stage)
    record.transcript_refs.append(
        {"stage": stage, "digest": prompt_digest(stage, prompt), "ordinal": ordinal}
    )
    return response


def self_check(
    stage: str,
    result: StageResult,
    description: str,
    config: RunConfig,
    backend,
    record: RunRecord,
    exams_left: int,
):
    """Follow-up completion asking the agent to score its extraction."""
    prompt = substitute(
        load_suffix("self_check"),
        {
            "description": description,
            "extraction": serialize.dumps_canonical(result.doc).strip(),
        },
    )
    response = _complete(stage, prompt, backend, record)
    score, rationale = parse_confidence(response.text)
    return build_report(score, rationale, config.threshold_for(stage), exams_left)


def run_stage_with_ec(
    stage: str,
    description: str,
    stage_docs: dict[str, dict],
    config: RunConfig,
    backend,
    record: RunRecord,
    clar_suffix: str = "",
) -> StageResult:
    """Stage execution wrapped in the error-correction loop.

    With EC disabled (or the stage not EC-enabled) this is exactly one
    run_stage call: the disabled path equals the enabled path in which
    every self-score clears the threshold.
    """
    ec_on = config.ec_enabled and stage in config.ec_stages
    reexamine_suffix = load_suffix("reexamine_suffix")
    extra = clar_suffix

    result = run_stage(stage, description, stage_docs, config, backend, record, extra)
    if not ec_on:
        return result

    for exam in range(config.max_reexaminations + 1):
        exams_left = config.max_reexaminations - exam
        report = self_check(stage, result, description, config, backend, record, exams_left)
        result.confidence = report
        if report.verdict == VERDICT_ACCEPT:
            return result
        if report.verdict == VERDICT_CLARIFY:
            request = make_clarification(stage, report)
            record.clarifications.append(request)
            record.status = STATUS_PARKED
            # keep the doubtful artifact inspectable without marking the
            # stage complete; the stage re-runs once the answer arrives
            record.stage_results[stage] = result
            if result.doc is not None:
                record.root.mkdir(parents=True, exist_ok=True)
                (record.root / f"{stage}.clarify-pending.json").write_text(
                    serialize.dumps_canonical(result.doc), encoding="utf-8"
                )
            record.save_meta()
            raise PendingClarification(record.run_id, stage, request.question)
        extra = clar_suffix + substitute(
            reexamine_suffix, {"prior": serialize.dumps_canonical(result.doc).strip()}
        )
        result = run_stage(stage, description, stage_docs, config, backend, record, extra)

    raise AssertionError("unreachable: clarify must fire before the loop ends")


def run_pipeline(
    task: TaskSpec,
    config: RunConfig,
    backend,
    run_id: str,
    runs_root: str | Path = "runs",
    record: RunRecord | None = None,
) -> RunRecord:
    """Execute all stages in dependency order for one trial.

    Resumable: pass a loaded RunRecord (e.g. after answering a
    clarification) and completed stages are skipped.  The error-correction
    loop may park the run by raising PendingClarification.
    """
    if record is None:
        record = RunRecord(
            run_id=run_id,
            task_id=task.id,
            description=task.description,
            config_doc=config.as_dict(),
            root=Path(runs_root) / run_id,
        )
        record.save_meta()

    clar_by_stage: dict[str, list[str]] = {}
    for c in record.clarifications:
        if c.answer is not None:
            clar_by_stage.setdefault(c.stage, []).append(c.answer)
    clar_template = load_suffix("clarification_suffix")

    for stage_id in STAGE_ORDER:
        stage = stage_id.value
        if stage in record.stage_docs:
            continue
        missing = [
            d.value for d in sorted(
                (s for s in IR_STAGE_ORDER if s in _deps(stage_id)), key=lambda s: s.value
            )
            if d.value not in record.stage_docs
        ]
        if missing:
            raise AssertionError(f"stage {stage} scheduled before dependencies {missing}")

        clar_suffix = "".join(
            substitute(clar_template, {"answer": a}) for a in clar_by_stage.get(stage, [])
        )
        result = run_stage_with_ec(
            stage, task.description, record.stage_docs, config, backend, record, clar_suffix
        )
        if stage == "coding":
            record.coding_raw = result.attempts[-1].response_text
            record.root.mkdir(parents=True, exist_ok=True)
            (record.root / "code").mkdir(exist_ok=True)
            (record.root / "code" / "main.py").write_text(
                result.artifact.source, encoding="utf-8"
            )
        record.save_stage(result)

    # whole-IR validation, persisted so replays can be checked byte-for-byte
    if record.has_all_ir_stages():
        ir = serialize.assemble_ir(record.ir_stage_docs())
        report = validate_ir(ir)
        (record.root / "validation.json").write_text(
            serialize.dumps_canonical(report.as_dict()), encoding="utf-8"
        )

    record.status = STATUS_COMPLETE
    record.save_meta()
    return record


def _deps(stage_id: StageId) -> frozenset[StageId]:
    from .stages import DEPENDENCIES

    return DEPENDENCIES[stage_id]
