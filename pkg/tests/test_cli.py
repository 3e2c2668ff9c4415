import json
from pathlib import Path

import pytest
from click.testing import CliRunner

from conftest import FIXTURES
from nl2mdp.cli import cli
from nl2mdp.ir import serialize, validate_ir


@pytest.fixture()
def config_file(tmp_path) -> str:
    doc = {
        "exec_timeout_s": 120.0,
        "policy_criteria": {
            "wireless": {
                "kind": "oracle_ratio",
                "ratio": 0.9,
                "oracle_results": str(FIXTURES / "wireless" / "oracle_results.json"),
            }
        },
    }
    path = tmp_path / "config.json"
    path.write_text(json.dumps(doc))
    return str(path)


def run_cli(*args):
    return CliRunner().invoke(cli, list(args), catch_exceptions=False)


def test_run_on_golden_fixture_succeeds(tmp_path, config_file):
    result = run_cli(
        "run", "cart-pole",
        "--backend", f"replay:{FIXTURES / 'cart-pole'}",
        "--runs-dir", str(tmp_path / "runs"),
        "--run-id", "golden",
        "--config", config_file,
    )
    assert result.exit_code == 0, result.output
    assert "M=True C=True P=True" in result.output


def test_run_unknown_task_exits_3(tmp_path):
    result = run_cli(
        "run", "missing-task",
        "--backend", f"replay:{FIXTURES / 'cart-pole'}",
        "--runs-dir", str(tmp_path / "runs"),
    )
    assert result.exit_code == 3


def test_run_replay_miss_exits_5(tmp_path):
    empty = tmp_path / "empty-fixtures"
    empty.mkdir()
    result = run_cli(
        "run", "cart-pole",
        "--backend", f"replay:{empty}",
        "--runs-dir", str(tmp_path / "runs"),
    )
    assert result.exit_code == 5


def test_run_stage_exhaustion_exits_6(tmp_path):
    """Record a run whose parameter stage returns garbage on every ask,
    then replay it through the CLI: categorized exit code 6."""
    from nl2mdp.config import RunConfig
    from nl2mdp.errors import StageExhausted
    from nl2mdp.gateway import RecordingBackend, ScriptedBackend
    from nl2mdp.pipeline import run_pipeline
    from nl2mdp.tasks import get_task

    fx = tmp_path / "fx"
    rec = RecordingBackend(
        ScriptedBackend({"parameter": ["nothing parseable here"] * 3}), fx
    )
    with pytest.raises(StageExhausted):
        run_pipeline(
            get_task("cart-pole"), RunConfig(backend="scripted"), rec, "seed", tmp_path / "s"
        )
    result = run_cli(
        "run", "cart-pole",
        "--backend", f"replay:{fx}",
        "--runs-dir", str(tmp_path / "runs"),
    )
    assert result.exit_code == 6


def test_replay_command_verifies_determinism(config_file):
    result = run_cli(
        "replay", "mountain-car",
        "--fixtures", str(FIXTURES / "mountain-car"),
        "--times", "2",
        "--config", config_file,
    )
    assert result.exit_code == 0, result.output
    assert "replay deterministic" in result.output


def test_bench_writes_reports_and_tolerates_crashes(tmp_path, config_file):
    """One real task plus one whose fixtures are empty: the bench records
    the broken trials as all-false instead of aborting."""
    empty = tmp_path / "nothing"
    empty.mkdir()
    (tmp_path / "fx").mkdir()
    result = run_cli(
        "bench",
        "--tasks", "cart-pole,wireless",
        "--trials", "2",
        "--backend", f"replay:{FIXTURES}/{{task}}",
        "--runs-dir", str(tmp_path / "runs"),
        "--out", str(tmp_path / "reports"),
        "--config", config_file,
    )
    assert result.exit_code == 0, result.output
    report = (tmp_path / "reports" / "report.md").read_text()
    assert "| cart-pole | 1.00 / 1.00 / 1.00 | 2 |" in report
    assert (tmp_path / "reports" / "rates.csv").is_file()
    assert (tmp_path / "reports" / "distribution.csv").is_file()


def test_bench_partial_failure_records_all_false(tmp_path, config_file):
    empty = tmp_path / "empty"
    empty.mkdir()
    result = run_cli(
        "bench",
        "--tasks", "cart-pole",
        "--trials", "2",
        "--backend", f"replay:{empty}",
        "--runs-dir", str(tmp_path / "runs"),
        "--out", str(tmp_path / "reports"),
        "--config", config_file,
    )
    assert result.exit_code == 0, result.output
    assert "| cart-pole | 0.00 / 0.00 / 0.00 | 2 |" in result.output


def test_bench_single_trial_rates_are_zero_or_one(tmp_path, config_file):
    result = run_cli(
        "bench",
        "--tasks", "cart-pole",
        "--trials", "1",
        "--backend", f"replay:{FIXTURES / 'cart-pole'}",
        "--runs-dir", str(tmp_path / "runs"),
        "--out", str(tmp_path / "reports"),
        "--config", config_file,
    )
    assert result.exit_code == 0
    assert "| cart-pole | 1.00 / 1.00 / 1.00 | 1 |" in result.output


def test_inspect_round_trips_artifacts(tmp_path, config_file):
    run_cli(
        "run", "wireless",
        "--backend", f"replay:{FIXTURES / 'wireless'}",
        "--runs-dir", str(tmp_path / "runs"),
        "--run-id", "w",
        "--config", config_file,
    )
    result = run_cli("inspect", str(tmp_path / "runs" / "w"), "--json")
    assert result.exit_code == 0
    payload = json.loads(result.output)
    assert payload["modeling_clean"] is True
    report = validate_ir(serialize.assemble_ir(payload["artifacts"]))
    assert report.as_dict() == payload["validation"]


def test_inspect_single_stage(tmp_path, config_file):
    run_cli(
        "run", "cart-pole",
        "--backend", f"replay:{FIXTURES / 'cart-pole'}",
        "--runs-dir", str(tmp_path / "runs"),
        "--run-id", "c",
        "--config", config_file,
    )
    result = run_cli("inspect", str(tmp_path / "runs" / "c"), "--stage", "env")
    assert json.loads(result.output)["usage"] == "CartPole-v1"


def test_report_command_is_idempotent(tmp_path, config_file):
    runs = tmp_path / "runs"
    run_cli(
        "run", "cart-pole",
        "--backend", f"replay:{FIXTURES / 'cart-pole'}",
        "--runs-dir", str(runs),
        "--run-id", "r0",
        "--config", config_file,
    )
    before = {p: p.read_bytes() for p in runs.rglob("*") if p.is_file()}
    r1 = run_cli("report", "--runs-dir", str(runs), "--out", str(tmp_path / "rep1"))
    r2 = run_cli("report", "--runs-dir", str(runs), "--out", str(tmp_path / "rep2"))
    assert r1.exit_code == 0 and r2.exit_code == 0
    after = {p: p.read_bytes() for p in runs.rglob("*") if p.is_file()}
    assert before == after  # report never mutates trial data
    assert (tmp_path / "rep1" / "report.md").read_bytes() == (
        tmp_path / "rep2" / "report.md"
    ).read_bytes()


def test_bench_parallel_trials(tmp_path, config_file):
    result = run_cli(
        "bench",
        "--tasks", "cart-pole,mountain-car",
        "--trials", "2",
        "--backend", f"replay:{FIXTURES}/{{task}}",
        "--runs-dir", str(tmp_path / "runs"),
        "--out", str(tmp_path / "reports"),
        "--parallel", "4",
        "--config", config_file,
    )
    assert result.exit_code == 0, result.output
    assert "| cart-pole | 1.00 / 1.00 / 1.00 | 2 |" in result.output
    assert "| mountain-car | 1.00 / 1.00 / 1.00 | 2 |" in result.output


def test_run_with_record_produces_a_usable_fixture_set(tmp_path, config_file):
    rerecorded = tmp_path / "rerecorded"
    first = run_cli(
        "run", "cart-pole",
        "--backend", f"replay:{FIXTURES / 'cart-pole'}",
        "--record", str(rerecorded),
        "--runs-dir", str(tmp_path / "runs"),
        "--run-id", "a",
        "--config", config_file,
    )
    assert first.exit_code == 0
    assert len(list(rerecorded.glob("*.json"))) == 9
    second = run_cli(
        "run", "cart-pole",
        "--backend", f"replay:{rerecorded}",
        "--runs-dir", str(tmp_path / "runs"),
        "--run-id", "b",
        "--config", config_file,
    )
    assert second.exit_code == 0
    assert "M=True C=True P=True" in second.output
    for stage in ("parameter", "env", "sar"):
        a = (tmp_path / "runs" / "a" / f"{stage}.json").read_bytes()
        b = (tmp_path / "runs" / "b" / f"{stage}.json").read_bytes()
        assert a == b


def test_run_substitutes_task_placeholder_in_backend_spec(tmp_path, config_file):
    result = run_cli(
        "run", "cart-pole",
        "--backend", f"replay:{FIXTURES}/{{task}}",
        "--runs-dir", str(tmp_path / "runs"),
        "--run-id", "ph",
        "--config", config_file,
    )
    assert result.exit_code == 0, result.output
    assert "M=True C=True P=True" in result.output


def test_clarify_command_resumes_parked_run(tmp_path):
    """Record a full park-answer-resume flow against scripted responses,
    then replay it via the CLI: run parks with exit 4, clarify completes."""
    from nl2mdp.casestudies import IR_STAGES, load_raw
    from nl2mdp.config import RunConfig
    from nl2mdp.errors import PendingClarification
    from nl2mdp.gateway import RecordingBackend, ScriptedBackend
    from nl2mdp.pipeline import RunRecord, run_trial
    from nl2mdp.tasks import get_task
    from conftest import GOLDEN_CODE

    answer = "All seven listed quantities are the known parameters."
    raw = load_raw("wireless", "parameter")
    low = "=====\nCONFIDENCE: 0.3\nRATIONALE: unsure\n====="
    high = "=====\nCONFIDENCE: 0.95\nRATIONALE: confirmed by the expert\n====="
    responses = {stage: [load_raw("wireless", stage)] for stage in IR_STAGES}
    responses["parameter"] = [raw, low, raw, low, raw, low, raw, high]
    source = (GOLDEN_CODE / "wireless.py").read_text()
    responses["coding"] = [f"```python\n{source}```"]

    fx = tmp_path / "fx"
    backend = RecordingBackend(ScriptedBackend(responses), fx)
    oracle = str(FIXTURES / "wireless" / "oracle_results.json")
    cfg = RunConfig(
        backend=f"replay:{fx}", ec_enabled=True, ec_stages=("parameter",),
        exec_timeout_s=120.0,
    )
    cfg.policy_criteria["wireless"] = type(cfg.policy_criteria["wireless"])(
        "wireless", "oracle_ratio", ratio=0.9, oracle_results=oracle
    )
    task = get_task("wireless")
    seed_root = tmp_path / "seed"
    with pytest.raises(PendingClarification):
        run_trial(task, cfg, backend, "seed", seed_root)
    seeded = RunRecord.load(seed_root / "seed")
    seeded.pending_clarification().answer = answer
    seeded.save_meta()
    run_trial(task, cfg, backend, "seed", seed_root, record=seeded)

    # now the recorded fixture replays the same flow through the CLI
    config_doc = {
        "backend": f"replay:{fx}",
        "ec_enabled": True,
        "ec_stages": ["parameter"],
        "exec_timeout_s": 120.0,
        "policy_criteria": {
            "wireless": {"kind": "oracle_ratio", "ratio": 0.9, "oracle_results": oracle}
        },
    }
    config_path = tmp_path / "cfg.json"
    config_path.write_text(json.dumps(config_doc))
    parked = run_cli(
        "run", "wireless",
        "--runs-dir", str(tmp_path / "runs"),
        "--run-id", "w",
        "--config", str(config_path),
    )
    assert parked.exit_code == 4
    resumed = run_cli("clarify", str(tmp_path / "runs" / "w"), "--answer", answer)
    assert resumed.exit_code == 0, resumed.output
    assert "M=True C=True P=True" in resumed.output


def test_clarify_without_pending_request(tmp_path, config_file):
    run_cli(
        "run", "cart-pole",
        "--backend", f"replay:{FIXTURES / 'cart-pole'}",
        "--runs-dir", str(tmp_path / "runs"),
        "--run-id", "done",
        "--config", config_file,
    )
    result = run_cli("clarify", str(tmp_path / "runs" / "done"), "--answer", "anything")
    assert result.exit_code == 1
    assert "no open clarification" in result.output


def test_clarify_empty_answer_rejected(tmp_path):
    result = CliRunner().invoke(cli, ["clarify", str(tmp_path), "--answer", "  "])
    assert result.exit_code == 2


def test_run_parked_clarification_exits_4(tmp_path):
    """A parked EC run in a non-interactive session prints the question and
    the resume command, then exits with the pending-clarification code."""
    from nl2mdp.casestudies import IR_STAGES, load_raw
    from nl2mdp.gateway import RecordingBackend, ScriptedBackend

    # build a fixture set whose parameter stage stays low-confidence
    raw = load_raw("wireless", "parameter")
    low = "=====\nCONFIDENCE: 0.2\nRATIONALE: unsure about the distances\n====="
    responses = {stage: [load_raw("wireless", stage)] for stage in IR_STAGES}
    responses["parameter"] = [raw, low, raw, low, raw, low]
    fx = tmp_path / "fx"
    rec = RecordingBackend(ScriptedBackend(responses), fx)

    from nl2mdp.config import RunConfig
    from nl2mdp.errors import PendingClarification
    from nl2mdp.pipeline import run_pipeline
    from nl2mdp.tasks import get_task

    cfg = RunConfig(backend="scripted", ec_enabled=True, ec_stages=("parameter",))
    with pytest.raises(PendingClarification):
        run_pipeline(get_task("wireless"), cfg, rec, "seed-run", tmp_path / "seed")

    config = tmp_path / "cfg.json"
    config.write_text(json.dumps({"ec_enabled": True, "ec_stages": ["parameter"]}))
    result = run_cli(
        "run", "wireless",
        "--backend", f"replay:{fx}",
        "--runs-dir", str(tmp_path / "runs"),
        "--run-id", "parked",
        "--config", str(config),
        "--ec", "on",
    )
    assert result.exit_code == 4
    assert "resume with" in result.output
    assert (tmp_path / "runs" / "parked" / "run.json").is_file()
