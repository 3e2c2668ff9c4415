"""Operator surface: run trials, benchmarks, replays, inspection, reports.

Exit codes: 0 success, 1 unexpected error, 2 usage/config error,
3 task not found, 4 pending clarification, 5 replay miss,
6 stage exhausted, 7 sandbox setup failure.
"""

from __future__ import annotations

import hashlib
import json
import sys
import tempfile
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import click

from . import errors
from .config import RunConfig
from .evaluation import (
    TrialOutcome,
    failure_distribution,
    success_rates,
    triplet_table_md,
    write_reports,
)
from .gateway import make_backend
from .ir import serialize, validate_ir
from .pipeline import IR_STAGE_ORDER, RunRecord, run_trial
from .tasks import get_task

EXIT_CODES = {
    errors.TaskNotFound: 3,
    errors.PendingClarification: 4,
    errors.ReplayMiss: 5,
    errors.StageExhausted: 6,
    errors.SandboxSetupError: 7,
}


def _exit_for(exc: Exception) -> int:
    for klass, code in EXIT_CODES.items():
        if isinstance(exc, klass):
            return code
    return 1


def _fail(exc: Exception) -> None:
    if isinstance(exc, click.ClickException):  # usage errors keep click's exit code
        raise exc
    click.echo(f"error: {exc}", err=True)
    sys.exit(_exit_for(exc))


def _load_config(config_path: str | None, backend: str | None, ec: str | None,
                 runs_dir: str | None, record: str | None) -> RunConfig:
    from dataclasses import replace

    cfg = RunConfig.load(config_path) if config_path else RunConfig()
    if backend:
        cfg = replace(cfg, backend=backend)
    if ec is not None:
        cfg = replace(cfg, ec_enabled=(ec == "on"))
    if runs_dir:
        cfg = replace(cfg, runs_dir=runs_dir)
    if record:
        cfg = replace(cfg, record_dir=record)
    return cfg


@click.group()
def cli() -> None:
    """Natural-language task descriptions to validated MDP representations
    and trained-policy code."""


@cli.command()
@click.argument("task_ref")
@click.option("--backend", help="replay:<fixture-dir> or live:<config.json>")
@click.option("--ec", type=click.Choice(["on", "off"]), default=None, help="error correction")
@click.option("--record", "record_dir", help="record the run as a fixture set")
@click.option("--runs-dir", help="run directory root")
@click.option("--run-id", help="explicit run id (default: task + timestamp)")
@click.option("--config", "config_path", help="run config JSON")
def run(task_ref, backend, ec, record_dir, runs_dir, run_id, config_path):
    """Run one end-to-end trial and print the (M, C, P) verdict."""
    try:
        cfg = _load_config(config_path, backend, ec, runs_dir, record_dir)
        task = get_task(task_ref)
        run_id = run_id or f"{task.id}-{time.strftime('%Y%m%d-%H%M%S')}"
        be = make_backend(cfg.backend.replace("{task}", task.id), cfg.record_dir)
        record = None
        while True:
            try:
                record, outcome = run_trial(
                    task, cfg, be, run_id, cfg.runs_dir, record=record
                )
                break
            except errors.PendingClarification as exc:
                if not sys.stdin.isatty():
                    click.echo(f"run parked at stage {exc.stage}: {exc.question}")
                    click.echo(
                        f"resume with: nl2mdp clarify {Path(cfg.runs_dir) / run_id} --answer TEXT"
                    )
                    sys.exit(4)
                answer = click.prompt(f"[{exc.stage}] {exc.question}\nanswer")
                record = RunRecord.load(Path(cfg.runs_dir) / run_id)
                record.pending_clarification().answer = answer
                record.save_meta()
        click.echo(
            f"run {run_id}: M={outcome.modeling} C={outcome.coding} P={outcome.policy}"
        )
        click.echo(f"artifacts: {Path(cfg.runs_dir) / run_id}")
    except Exception as exc:  # noqa: BLE001 - single mapping point to exit codes
        _fail(exc)


@cli.command()
@click.option("--tasks", "tasks_csv", required=True, help="comma-separated task refs")
@click.option("--trials", type=int, default=20, show_default=True)
@click.option("--backend", help="backend spec; replay fixture dirs may use {task}")
@click.option("--ec", type=click.Choice(["on", "off"]), default=None)
@click.option("--runs-dir", help="run directory root")
@click.option("--out", "out_dir", default="reports", show_default=True)
@click.option("--parallel", type=int, default=1, show_default=True)
@click.option("--config", "config_path", help="run config JSON")
def bench(tasks_csv, trials, backend, ec, runs_dir, out_dir, parallel, config_path):
    """Run N independent trials per task and write report tables.

    Individual trial crashes are recorded as all-false outcomes with the
    error as evidence; the bench itself never aborts on them.
    """
    try:
        if trials < 1:
            raise click.UsageError("--trials must be >= 1")
        cfg = _load_config(config_path, backend, ec, runs_dir, None)
        task_ids = [t.strip() for t in tasks_csv.split(",") if t.strip()]
        by_task: dict[str, list[TrialOutcome]] = {}

        def one_trial(task_id: str, index: int) -> tuple[str, TrialOutcome]:
            task = get_task(task_id)
            spec = cfg.backend.replace("{task}", task_id)
            be = make_backend(spec)
            run_id = f"{task_id}-trial-{index:03d}"
            try:
                _, outcome = run_trial(task, cfg, be, run_id, cfg.runs_dir)
            except Exception as exc:  # noqa: BLE001 - trial isolation by design
                outcome = TrialOutcome(
                    modeling=False, coding=False, policy=False,
                    evidence={"trial_error": f"{type(exc).__name__}: {exc}",
                              "execution_ran": False},
                )
            return task_id, outcome

        jobs = [(t, i) for t in task_ids for i in range(trials)]
        if parallel > 1:
            with ThreadPoolExecutor(max_workers=parallel) as pool:
                results = list(pool.map(lambda j: one_trial(*j), jobs))
        else:
            results = [one_trial(*j) for j in jobs]
        for task_id, outcome in results:
            by_task.setdefault(task_id, []).append(outcome)

        triplets = {t: success_rates(o) for t, o in by_task.items()}
        dists = {t: failure_distribution(o) for t, o in by_task.items()}
        paths = write_reports(out_dir, triplets, dists)
        click.echo(triplet_table_md(triplets), nl=False)
        click.echo(f"reports: {', '.join(str(p) for p in paths.values())}")
    except Exception as exc:  # noqa: BLE001
        _fail(exc)


@cli.command()
@click.argument("task_ref")
@click.option("--fixtures", "fixtures_dir", required=True)
@click.option("--times", type=int, default=3, show_default=True)
@click.option("--config", "config_path", help="run config JSON")
def replay(task_ref, fixtures_dir, times, config_path):
    """Replay a fixture set repeatedly and verify byte-identical artifacts."""
    try:
        cfg = _load_config(config_path, f"replay:{fixtures_dir}", None, None, None)
        task = get_task(task_ref)
        digests = []
        outcomes = []
        for i in range(times):
            with tempfile.TemporaryDirectory() as tmp:
                be = make_backend(cfg.backend)
                rec, outcome = run_trial(task, cfg, be, f"replay-{i}", tmp)
                h = hashlib.sha256()
                for stage in IR_STAGE_ORDER:
                    p = rec.root / f"{stage.value}.json"
                    if p.is_file():
                        h.update(p.read_bytes())
                code = rec.root / "code" / "main.py"
                if code.is_file():
                    h.update(code.read_bytes())
                digests.append(h.hexdigest())
                outcomes.append((outcome.modeling, outcome.coding, outcome.policy))
        deterministic = len(set(digests)) == 1 and len(set(outcomes)) == 1
        click.echo(f"artifact digest: {digests[0][:16]} x{times}")
        click.echo(f"outcome: M={outcomes[0][0]} C={outcomes[0][1]} P={outcomes[0][2]}")
        if not deterministic:
            click.echo("REPLAY NOT DETERMINISTIC", err=True)
            sys.exit(1)
        click.echo("replay deterministic")
    except Exception as exc:  # noqa: BLE001
        _fail(exc)


@cli.command()
@click.argument("run_dir")
@click.option("--stage", "stage_name", help="print one stage artifact only")
@click.option("--json", "as_json", is_flag=True, help="machine-readable output")
def inspect(run_dir, stage_name, as_json):
    """Print a run's artifacts and re-validate the assembled IR."""
    try:
        record = RunRecord.load(run_dir)
        if stage_name:
            doc = record.stage_docs.get(stage_name)
            if doc is None:
                raise click.UsageError(f"no artifact for stage {stage_name!r}")
            click.echo(serialize.dumps_canonical(doc), nl=False)
            return
        payload = {
            "run_id": record.run_id,
            "task_id": record.task_id,
            "status": record.status,
            "stages": sorted(record.stage_docs),
            "clarifications": [c.as_dict() for c in record.clarifications],
        }
        if record.has_all_ir_stages():
            report = validate_ir(serialize.assemble_ir(record.ir_stage_docs()))
            payload["validation"] = report.as_dict()
            payload["modeling_clean"] = report.empty
        if as_json:
            payload["artifacts"] = record.ir_stage_docs()
            click.echo(json.dumps(payload, indent=2, ensure_ascii=False))
        else:
            click.echo(f"run {record.run_id} ({record.task_id}): {record.status}")
            click.echo(f"stages: {', '.join(payload['stages'])}")
            if "modeling_clean" in payload:
                n = len(payload["validation"]["findings"])
                click.echo(
                    f"validation: {'clean' if payload['modeling_clean'] else 'VIOLATIONS'} "
                    f"({n} findings)"
                )
    except Exception as exc:  # noqa: BLE001
        _fail(exc)


@cli.command()
@click.option("--runs-dir", default="runs", show_default=True)
@click.option("--out", "out_dir", default="reports", show_default=True)
def report(runs_dir, out_dir):
    """Aggregate persisted trial outcomes into report tables.

    Re-running never mutates trial data; it only reads outcome.json files.
    """
    try:
        by_task: dict[str, list[TrialOutcome]] = {}
        for outcome_path in sorted(Path(runs_dir).glob("*/outcome.json")):
            meta = json.loads((outcome_path.parent / "run.json").read_text())
            doc = json.loads(outcome_path.read_text())
            by_task.setdefault(meta["task_id"], []).append(TrialOutcome.from_dict(doc))
        if not by_task:
            raise errors.EmptyTrialSet(f"no outcomes under {runs_dir}")
        triplets = {t: success_rates(o) for t, o in by_task.items()}
        dists = {t: failure_distribution(o) for t, o in by_task.items()}
        paths = write_reports(out_dir, triplets, dists)
        click.echo(triplet_table_md(triplets), nl=False)
        click.echo(f"reports: {', '.join(str(p) for p in paths.values())}")
    except Exception as exc:  # noqa: BLE001
        _fail(exc)


@cli.command()
@click.argument("run_dir")
@click.option("--answer", required=True)
def clarify(run_dir, answer):
    """Answer a parked run's clarification request and resume it."""
    try:
        if not answer.strip():
            raise click.UsageError("--answer must be non-empty")
        record = RunRecord.load(run_dir)
        pending = record.pending_clarification()
        if pending is None:
            raise errors.NoPendingRequest(f"run {record.run_id} has no open clarification")
        pending.answer = answer
        record.status = "running"
        record.save_meta()
        cfg = RunConfig.from_dict(record.config_doc)
        be = make_backend(cfg.backend.replace("{task}", record.task_id), cfg.record_dir)
        if hasattr(be, "preconsume"):
            # replay backends must not re-serve entries the parked session used
            be.preconsume(record.transcript_refs)
        from .tasks import TaskSpec

        task = TaskSpec(id=record.task_id, description=record.description)
        record, outcome = run_trial(
            task, cfg, be, record.run_id, Path(run_dir).parent, record=record
        )
        click.echo(
            f"run {record.run_id} resumed: M={outcome.modeling} "
            f"C={outcome.coding} P={outcome.policy}"
        )
    except Exception as exc:  # noqa: BLE001
        _fail(exc)


def main() -> None:
    cli()


if __name__ == "__main__":
    main()
