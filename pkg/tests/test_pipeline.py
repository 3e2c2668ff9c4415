import json

import pytest

from conftest import scripted_backend_for
from nl2mdp.casestudies import IR_STAGES, load_raw
from nl2mdp.config import RunConfig
from nl2mdp.errors import PendingClarification, StageExhausted
from nl2mdp.gateway import ScriptedBackend
from nl2mdp.ir import serialize, validate_ir
from nl2mdp.pipeline import (
    DEPENDENCIES,
    RunRecord,
    STAGE_ORDER,
    StageId,
    run_pipeline,
    run_stage,
    run_stage_with_ec,
    stage_dependencies,
)
from nl2mdp.tasks import TaskSpec, get_task


def conf(score: float) -> str:
    return f"=====\nCONFIDENCE: {score}\nRATIONALE: scripted check\n====="


def make_record(tmp_path, task_id="cart-pole") -> RunRecord:
    return RunRecord(
        run_id="t", task_id=task_id, description=get_task(task_id).description,
        config_doc={}, root=tmp_path / "t",
    )


# --- dependency relation ---------------------------------------------------------


def test_parameter_stage_has_no_prerequisites():
    assert stage_dependencies("parameter") == frozenset()


def test_objective_modeling_requires_constraints():
    assert StageId.CONSTRAINT in stage_dependencies("objective_modeling")


def test_stage_order_is_a_topological_sort():
    seen = set()
    for stage in STAGE_ORDER:
        assert DEPENDENCIES[stage] <= seen, f"{stage} runs before {DEPENDENCIES[stage] - seen}"
        seen.add(stage)
    assert seen == set(StageId)


def test_dependency_relation_is_acyclic():
    # repeated elimination of dependency-free nodes must consume the graph
    remaining = {s: set(d) for s, d in DEPENDENCIES.items()}
    while remaining:
        free = [s for s, d in remaining.items() if not d]
        assert free, f"cycle among {sorted(s.value for s in remaining)}"
        for s in free:
            remaining.pop(s)
        for d in remaining.values():
            d.difference_update(free)


# --- run_stage -------------------------------------------------------------------


def test_stage_parses_cartpole_parameters(tmp_path, desk_config):
    backend = ScriptedBackend({"parameter": [load_raw("cart-pole", "parameter")]})
    record = make_record(tmp_path)
    result = run_stage(
        "parameter", record.description, {}, desk_config, backend, record
    )
    symbols = [p.symbol for p in result.artifact]
    assert symbols[0] == "CartPosition"
    assert symbols[-1] == "PoleAngleLimit"
    assert len(symbols) == 6


def test_malformed_then_valid_payload_needs_two_attempts(tmp_path, desk_config):
    backend = ScriptedBackend(
        {"parameter": ["{not json", load_raw("cart-pole", "parameter")]}
    )
    record = make_record(tmp_path)
    result = run_stage("parameter", record.description, {}, desk_config, backend, record)
    assert len(result.attempts) == 2
    assert result.attempts[0].error is not None
    assert result.attempts[1].error is None


def test_reask_prompt_carries_the_violation(tmp_path, desk_config):
    bad = '{"parameters": [{"SYMBOL": "snake_case", "SHAPE": "[]", "DEFINITION": "d", "TYPE": "float"}]}'
    backend = ScriptedBackend({"parameter": [bad, load_raw("cart-pole", "parameter")]})
    record = make_record(tmp_path)
    run_stage("parameter", record.description, {}, desk_config, backend, record)
    # second call used a different prompt (violation appended) -> new digest
    digests = [r["digest"] for r in record.transcript_refs]
    assert len(digests) == 2 and digests[0] != digests[1]


def test_stage_exhausted_after_garbage(tmp_path, desk_config):
    garbage = ["still prose"] * (desk_config.max_stage_reasks + 1)
    backend = ScriptedBackend({"parameter": garbage})
    record = make_record(tmp_path)
    with pytest.raises(StageExhausted) as exc:
        run_stage("parameter", record.description, {}, desk_config, backend, record)
    assert exc.value.attempts == desk_config.max_stage_reasks + 1


# --- error correction -------------------------------------------------------------


def ec_config(**kw) -> RunConfig:
    return RunConfig(
        backend="scripted", ec_enabled=True, ec_stages=("parameter",),
        exec_timeout_s=60.0, **kw,
    )


def test_high_confidence_accepts_immediately(tmp_path):
    backend = ScriptedBackend(
        {"parameter": [load_raw("cart-pole", "parameter"), conf(0.9)]}
    )
    record = make_record(tmp_path)
    result = run_stage_with_ec(
        "parameter", record.description, {}, ec_config(), backend, record
    )
    assert result.confidence.verdict == "accept"
    assert result.confidence.score == 0.9
    assert len(record.transcript_refs) == 2  # extraction + one check


def test_low_then_high_reexamines_once(tmp_path):
    raw = load_raw("cart-pole", "parameter")
    backend = ScriptedBackend({"parameter": [raw, conf(0.4), raw, conf(0.9)]})
    record = make_record(tmp_path)
    result = run_stage_with_ec(
        "parameter", record.description, {}, ec_config(), backend, record
    )
    assert result.confidence.verdict == "accept"
    assert len(record.transcript_refs) == 4


def test_persistently_low_clarifies_after_two_reexaminations(tmp_path):
    raw = load_raw("cart-pole", "parameter")
    backend = ScriptedBackend(
        {"parameter": [raw, conf(0.4), raw, conf(0.4), raw, conf(0.4)]}
    )
    record = make_record(tmp_path)
    with pytest.raises(PendingClarification) as exc:
        run_stage_with_ec(
            "parameter", record.description, {}, ec_config(), backend, record
        )
    assert exc.value.stage == "parameter"
    # extraction+check three times: initial plus exactly E=2 re-examinations
    assert len(record.transcript_refs) == 6
    assert record.pending_clarification() is not None
    assert record.status == "parked"


def test_unparseable_score_treated_as_zero(tmp_path):
    raw = load_raw("cart-pole", "parameter")
    backend = ScriptedBackend(
        {"parameter": [raw, "no score here", raw, conf(0.95)]}
    )
    record = make_record(tmp_path)
    result = run_stage_with_ec(
        "parameter", record.description, {}, ec_config(), backend, record
    )
    assert result.confidence.verdict == "accept"


def test_parse_confidence_reads_score_and_rationale():
    from nl2mdp.pipeline import parse_confidence

    score, rationale = parse_confidence(
        "=====\nCONFIDENCE: 0.92\nRATIONALE: matches every stated quantity\n====="
    )
    assert score == 0.92
    assert "stated quantity" in rationale


def test_parse_confidence_edge_cases():
    from nl2mdp.pipeline import parse_confidence

    assert parse_confidence("no block at all")[0] == 0.0
    assert parse_confidence("=====\nCONFIDENCE: 7\n=====")[0] == 1.0  # clamped
    assert parse_confidence("CONFIDENCE: 0.5")[0] == 0.5  # tolerated without block
    score, rationale = parse_confidence("=====\nCONFIDENCE: 0.3\n=====")
    assert score == 0.3 and rationale == ""


# --- full pipeline ----------------------------------------------------------------


def test_cartpole_pipeline_produces_nine_artifacts(tmp_path, desk_config):
    task = get_task("cart-pole")
    record = run_pipeline(
        task, desk_config, scripted_backend_for("cart-pole"), "run1", tmp_path
    )
    assert len(record.stage_docs) == 9
    assert record.stage_docs["env"]["mode"] == "prebuilt"
    assert record.stage_docs["env"]["usage"] == "CartPole-v1"
    for stage in IR_STAGES:
        assert (record.root / f"{stage}.json").is_file()


def test_wireless_pipeline_env_is_custom(tmp_path, desk_config):
    record = run_pipeline(
        get_task("wireless"), desk_config, scripted_backend_for("wireless"),
        "run1", tmp_path,
    )
    assert record.stage_docs["env"]["mode"] == "custom"


def test_stage_start_order_respects_dependencies(tmp_path, desk_config):
    record = run_pipeline(
        get_task("cart-pole"), desk_config, scripted_backend_for("cart-pole"),
        "run1", tmp_path,
    )
    meta = json.loads((record.root / "run.json").read_text())
    started = [s["stage"] for s in meta["stages"]]
    positions = {s: i for i, s in enumerate(started)}
    for stage, deps in DEPENDENCIES.items():
        for dep in deps:
            assert positions[dep.value] < positions[stage.value]


def test_persisted_record_revalidates_identically(tmp_path, desk_config):
    record = run_pipeline(
        get_task("wireless"), desk_config, scripted_backend_for("wireless"),
        "run1", tmp_path,
    )
    stored = json.loads((record.root / "validation.json").read_text())
    loaded = RunRecord.load(record.root)
    fresh = validate_ir(serialize.assemble_ir(loaded.ir_stage_docs()))
    assert fresh.as_dict() == stored


def test_ec_disabled_equals_ec_with_high_scores(tmp_path):
    """EC off must be byte-identical to EC on when every score clears."""
    task = get_task("mountain-car")

    cfg_off = RunConfig(backend="scripted", ec_enabled=False, exec_timeout_s=60.0)
    rec_off = run_pipeline(
        task, cfg_off, scripted_backend_for("mountain-car"), "off", tmp_path / "a"
    )

    responses = {stage: [load_raw("mountain-car", stage)] for stage in IR_STAGES}
    for stage in ("parameter", "objective", "variable", "constraint"):
        responses[stage].append(conf(0.95))
    from conftest import GOLDEN_CODE

    source = (GOLDEN_CODE / "mountain-car.py").read_text()
    responses["coding"] = [f"```python\n{source}```"]

    cfg_on = RunConfig(backend="scripted", ec_enabled=True, exec_timeout_s=60.0)
    rec_on = run_pipeline(
        task, cfg_on, ScriptedBackend(responses), "on", tmp_path / "b"
    )

    for stage in IR_STAGES:
        off_bytes = (rec_off.root / f"{stage}.json").read_bytes()
        on_bytes = (rec_on.root / f"{stage}.json").read_bytes()
        assert off_bytes == on_bytes, f"stage {stage} artifacts diverge"


def test_clarified_run_resumes_to_completion(tmp_path):
    """Park on persistent low confidence, answer, resume, complete."""
    task = get_task("wireless")
    raw = load_raw("wireless", "parameter")
    responses = {stage: [load_raw("wireless", stage)] for stage in IR_STAGES}
    # parameter: three low-confidence rounds, then (after the answer) a clean one
    responses["parameter"] = [raw, conf(0.4), raw, conf(0.4), raw, conf(0.4), raw, conf(0.9)]
    from conftest import GOLDEN_CODE

    source = (GOLDEN_CODE / "wireless.py").read_text()
    responses["coding"] = [f"```python\n{source}```"]
    backend = ScriptedBackend(responses)

    cfg = RunConfig(
        backend="scripted", ec_enabled=True, ec_stages=("parameter",), exec_timeout_s=60.0
    )
    with pytest.raises(PendingClarification):
        run_pipeline(task, cfg, backend, "park", tmp_path)

    parked = RunRecord.load(tmp_path / "park")
    assert parked.status == "parked"
    pending = parked.pending_clarification()
    assert pending is not None and pending.stage == "parameter"
    assert "parameter" not in parked.stage_docs  # doubtful artifact not committed

    pending.answer = "The seven listed quantities are exactly the known parameters."
    parked.save_meta()
    record = run_pipeline(task, cfg, backend, "park", tmp_path, record=parked)
    assert record.status == "complete"
    assert len(record.stage_docs) == 9
    assert any(c.answer for c in record.clarifications)


def test_unanswered_clarification_blocks_only_its_trial(tmp_path):
    task = get_task("wireless")
    raw = load_raw("wireless", "parameter")
    backend = ScriptedBackend({"parameter": [raw, conf(0.1), raw, conf(0.1), raw, conf(0.1)]})
    cfg = RunConfig(backend="scripted", ec_enabled=True, ec_stages=("parameter",))
    with pytest.raises(PendingClarification):
        run_pipeline(task, cfg, backend, "blocked", tmp_path)
    # a second, independent trial with its own backend still runs
    record = run_pipeline(
        task,
        RunConfig(backend="scripted", ec_enabled=False),
        scripted_backend_for("wireless"),
        "free",
        tmp_path,
    )
    assert record.status == "complete"


def test_pipeline_works_for_file_based_task(tmp_path, desk_config):
    desc = tmp_path / "custom-task.txt"
    desc.write_text("Keep a made-up widget spinning. I will solve this with RL.")
    task = get_task(str(desc))
    assert task.id == "custom-task"
    backend = scripted_backend_for("cart-pole")  # responses are task-agnostic here
    record = run_pipeline(task, desk_config, backend, "custom", tmp_path)
    assert record.status == "complete"
