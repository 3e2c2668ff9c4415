"""Acceptance suite: one test per release criterion.

Each test is tagged with the criterion name; the terminal summary prints a
PASS/FAIL line per criterion.  Run with ``pytest tests/test_acceptance.py -v``.
"""

from __future__ import annotations

import hashlib
import os
import random
import tempfile
import time
from fractions import Fraction
from pathlib import Path

import pytest

from conftest import FIXTURES, TASK_IDS, TRIVIAL_TRAINER, record_criterion
from faults import FAULTS, apply_fault
from nl2mdp.casestudies import CASE_STUDY_IDS, case_study_ir, load_case_study
from nl2mdp.config import RunConfig
from nl2mdp.errors import PendingClarification
from nl2mdp.evaluation import (
    FailureDistribution,
    TrialOutcome,
    failure_distribution,
    judge_modeling,
    success_rates,
)
from nl2mdp.executor import (
    CodeArtifact,
    ExecLimits,
    KIND_CONTRACT,
    KIND_RUNTIME,
    KIND_SUCCESS,
    KIND_SYNTAX,
    KIND_TIMEOUT,
    execute,
    repair_loop,
)
from nl2mdp.gateway import ReplayBackend, ScriptedBackend
from nl2mdp.ir import validate_ir
from nl2mdp.pipeline import IR_STAGE_ORDER, RunRecord, run_stage_with_ec, run_trial
from nl2mdp.tasks import get_task


def outcome(m, c, p):
    return TrialOutcome(modeling=m, coding=c, policy=p, evidence={"execution_ran": True})


@pytest.mark.acceptance("replay-determinism")
def test_replay_determinism_all_tasks_three_runs(desk_config):
    """Byte-identical stage artifacts and identical (M, C, P) outcomes over
    three consecutive replays of every bundled task, in under 60 s total."""
    start = time.monotonic()
    for task_id in TASK_IDS:
        digests, outcomes = [], []
        for _ in range(3):
            with tempfile.TemporaryDirectory() as tmp:
                backend = ReplayBackend(FIXTURES / task_id)
                record, trial = run_trial(
                    get_task(task_id), desk_config, backend, "r", tmp
                )
                h = hashlib.sha256()
                for stage in IR_STAGE_ORDER:
                    h.update((record.root / f"{stage.value}.json").read_bytes())
                h.update((record.root / "code" / "main.py").read_bytes())
                digests.append(h.hexdigest())
                outcomes.append((trial.modeling, trial.coding, trial.policy))
        assert len(set(digests)) == 1, f"{task_id}: artifacts differ across replays"
        assert len(set(outcomes)) == 1, f"{task_id}: outcomes differ across replays"
        assert outcomes[0] == (True, True, True), f"{task_id}: golden outcome {outcomes[0]}"
    elapsed = time.monotonic() - start
    assert elapsed < 60.0, f"replay determinism took {elapsed:.1f}s"
    record_criterion("replay-determinism")


@pytest.mark.acceptance("fixture-validation")
def test_all_case_study_sets_validate_clean():
    """All five case-study artifact sets load and validate with zero
    violations, including the additive state shape and the delimited
    objective blocks."""
    for task_id in CASE_STUDY_IDS:
        parsed = load_case_study(task_id)
        # the objective stage came through a =====-delimited block
        assert parsed["objective"].artifact.prose
        ir = case_study_ir(task_id)
        report = validate_ir(ir)
        assert report.empty, f"{task_id}: {[f.message for f in report.violations]}"
    drone = case_study_ir("drone-delivery")
    assert drone.sar.state.shape.render() == "[1 + 2 + n + n]"
    record_criterion("fixture-validation")


@pytest.mark.acceptance("seeded-fault-suite")
def test_seeded_fault_suite_full_detection():
    """At least 12 mutated fixtures across six fault categories, every one
    flagged with modeling judged false: 100% detection."""
    assert len(FAULTS) >= 12
    assert len({f.category for f in FAULTS}) >= 6
    detected = 0
    for fault in FAULTS:
        verdict, _ = judge_modeling(apply_fault(fault))
        assert verdict is False, f"undetected fault: {fault.name}"
        detected += 1
    assert detected == len(FAULTS)
    record_criterion("seeded-fault-suite")


@pytest.mark.acceptance("metric-arithmetic")
def test_metric_arithmetic_matches_reported_rows():
    """Success-rate formatting, the failure-distribution row from counts
    (8, 7, 0, 0), and group normalization over 1,000 randomized sets."""
    trials = [outcome(True, True, True)] * 19 + [outcome(True, False, False)]
    triplet = success_rates(trials)
    assert triplet.coding_rate == Fraction(19, 20)
    assert triplet.formatted() == "1.00 / 0.95 / 0.95"

    trials = [outcome(True, True, True)] * 15 + [outcome(True, True, False)] * 5
    assert success_rates(trials).formatted() == "1.00 / 1.00 / 0.75"

    px = [outcome(True, True, False)] * 8 + [outcome(True, False, False)] * 7
    dist = failure_distribution(px + [outcome(True, True, True)] * 5)
    rounded = tuple(
        f"{dist.p_failure[k]:.2f}" for k in FailureDistribution.FAILURE_KEYS
    )
    assert rounded == ("0.53", "0.47", "0.00", "0.00")

    rng = random.Random(20260808)
    for _ in range(1000):
        n = rng.randint(1, 40)
        sample = [
            outcome(rng.random() < 0.8, rng.random() < 0.7, rng.random() < 0.4)
            for _ in range(n)
        ]
        d = failure_distribution(sample)
        for group in (d.p_success, d.p_failure):
            if group:
                assert abs(sum(group.values()) - 1.0) <= 1e-9
    record_criterion("metric-arithmetic")


@pytest.mark.acceptance("executor-classification")
def test_executor_classification_and_timeout_kill(tmp_path):
    """Seeded corpus classified with 100% accuracy; the timeout terminates
    the whole process tree within twice the limit."""
    spin_5s = (
        "import time\n"
        "deadline = time.time() + 5\n"
        "while time.time() < deadline:\n"
        "    pass\n"
    )
    corpus = [
        ("syntax", "def broken(:\n    pass\n", KIND_SYNTAX),
        ("runtime", "x = undefined_name\n", KIND_RUNTIME),
        ("spin", spin_5s, KIND_TIMEOUT),
        ("missing-results", "x = 1\n", KIND_CONTRACT),
        ("valid", TRIVIAL_TRAINER, KIND_SUCCESS),
    ]
    limit = 2.0
    correct = 0
    for name, source, expected in corpus:
        start = time.monotonic()
        result = execute(
            CodeArtifact(source=source), tmp_path / name, ExecLimits(timeout_s=limit)
        )
        elapsed = time.monotonic() - start
        assert result.kind == expected, f"{name}: {result.kind} != {expected}"
        if expected == KIND_TIMEOUT:
            assert elapsed < 2 * limit, f"timeout took {elapsed:.2f}s"
        correct += 1
    assert correct == len(corpus)

    # tree kill: the spinning parent spawns a sleeper child
    ws = tmp_path / "tree"
    tree_source = (
        "import subprocess, sys\n"
        "child = subprocess.Popen([sys.executable, '-c', 'import time; time.sleep(60)'])\n"
        "open('child.pid', 'w').write(str(child.pid))\n"
        "while True:\n    pass\n"
    )
    start = time.monotonic()
    result = execute(CodeArtifact(source=tree_source), ws, ExecLimits(timeout_s=limit))
    assert result.kind == KIND_TIMEOUT
    assert time.monotonic() - start < 2 * limit
    child_pid = int((ws / "child.pid").read_text())
    deadline = time.monotonic() + 2.0
    while time.monotonic() < deadline:
        try:
            os.kill(child_pid, 0)
        except ProcessLookupError:
            break
        time.sleep(0.05)
    else:
        pytest.fail("descendant survived the timeout")
    record_criterion("executor-classification")


@pytest.mark.acceptance("repair-loop")
def test_repair_loop_budgets(tmp_path):
    """Fix on attempt 2 -> Success with exactly 2 recorded attempts; an
    all-failing artifact stops at maxAttempts = 3."""
    scripted = ["x = undefined_name\n", TRIVIAL_TRAINER]

    def regenerate_fixing(prior, error):
        return CodeArtifact(source=scripted[1])

    result = repair_loop(
        CodeArtifact(source=scripted[0]), regenerate_fixing,
        tmp_path / "fixes", ExecLimits(timeout_s=30.0), max_attempts=3,
    )
    assert result.final.kind == KIND_SUCCESS
    assert result.attempts == 2

    def regenerate_failing(prior, error):
        return CodeArtifact(source="y = still_undefined\n")

    result = repair_loop(
        CodeArtifact(source="x = undefined_name\n"), regenerate_failing,
        tmp_path / "fails", ExecLimits(timeout_s=30.0), max_attempts=3,
    )
    assert result.attempts == 3
    assert result.final.kind == KIND_RUNTIME
    record_criterion("repair-loop")


@pytest.mark.acceptance("error-correction")
def test_error_correction_verdict_sequences(tmp_path):
    """Confidence sequences (0.9), (0.4, 0.9), (0.4, 0.4, 0.4) produce
    accept, reexamine-then-accept, and clarify, within E = 2."""
    from nl2mdp.casestudies import load_raw

    raw = load_raw("cart-pole", "parameter")
    task = get_task("cart-pole")
    cfg = RunConfig(backend="scripted", ec_enabled=True, ec_stages=("parameter",))

    def conf(score):
        return f"=====\nCONFIDENCE: {score}\nRATIONALE: scripted\n====="

    def attempt(queue, run_id):
        record = RunRecord(
            run_id=run_id, task_id=task.id, description=task.description,
            config_doc={}, root=tmp_path / run_id,
        )
        backend = ScriptedBackend({"parameter": queue})
        result = run_stage_with_ec(
            "parameter", task.description, {}, cfg, backend, record
        )
        return record, result

    record, result = attempt([raw, conf(0.9)], "high")
    assert result.confidence.verdict == "accept"
    assert len(record.transcript_refs) == 2  # no re-examination

    record, result = attempt([raw, conf(0.4), raw, conf(0.9)], "recover")
    assert result.confidence.verdict == "accept"
    assert len(record.transcript_refs) == 4  # exactly one re-examination

    with pytest.raises(PendingClarification):
        attempt([raw, conf(0.4), raw, conf(0.4), raw, conf(0.4)], "stuck")
    stuck = RunRecord.load(tmp_path / "stuck")
    assert stuck.pending_clarification() is not None
    assert stuck.status == "parked"
    # initial extraction plus at most E = 2 re-examinations, one check each
    assert len(stuck.transcript_refs) == 6
    record_criterion("error-correction")
