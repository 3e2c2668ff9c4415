"""Isolated execution of generated code with outcome classification.

Each execution owns an empty workspace and its own process group.  The
child is the shim (stub or runtime-kit), whose exit code classifies the
run; a wall-clock timeout kills the entire process group.
"""

from __future__ import annotations

import math
import os
import signal
import subprocess
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from ..errors import SandboxSetupError
from .extract import CodeArtifact
from .protocol import (
    EXIT_INTERNAL,
    EXIT_TO_KIND,
    KIND_CONTRACT,
    KIND_RUNTIME,
    KIND_SUCCESS,
    KIND_TIMEOUT,
    RESULTS_RELPATH,
    load_results_file,
)

DEFAULT_SHIM_CMD = (sys.executable, "-m", "nl2mdp.executor.stub_shim")


@dataclass(frozen=True)
class ExecLimits:
    timeout_s: float = 1800.0
    output_cap_bytes: int = 262144


@dataclass(frozen=True)
class TrainingResults:
    episode_returns: tuple[float, ...]
    eval_returns: tuple[float, ...]
    model_path: str
    extras: dict = field(default_factory=dict)

    @classmethod
    def from_doc(cls, doc: dict) -> "TrainingResults":
        extras = {
            k: v
            for k, v in doc.items()
            if k not in ("episode_returns", "eval_returns", "model_path")
        }
        return cls(
            episode_returns=tuple(float(v) for v in doc["episode_returns"]),
            eval_returns=tuple(float(v) for v in doc["eval_returns"]),
            model_path=str(doc["model_path"]),
            extras=extras,
        )


@dataclass(frozen=True)
class ExecutionOutcome:
    kind: str
    exit_status: int | None
    stdout: str
    stderr: str
    wall_time_s: float
    results: TrainingResults | None = None

    def as_dict(self) -> dict:
        return {
            "kind": self.kind,
            "exit_status": self.exit_status,
            "wall_time_s": round(self.wall_time_s, 3),
            "stderr_tail": self.stderr[-2000:],
        }


def _minimal_env() -> dict[str, str]:
    # task-local environment: interpreter necessities only, proxies stripped
    keep = ("PATH", "HOME", "TMPDIR", "LANG", "LC_ALL", "PYTHONPATH", "VIRTUAL_ENV")
    env = {k: os.environ[k] for k in keep if k in os.environ}
    env["PYTHONDONTWRITEBYTECODE"] = "1"
    env["NO_PROXY"] = "*"
    return env


def execute(
    code: CodeArtifact,
    workspace: str | Path,
    limits: ExecLimits,
    shim_cmd: tuple[str, ...] = (),
) -> ExecutionOutcome:
    """Run one code artifact in `workspace` and classify the outcome."""
    ws = Path(workspace)
    try:
        ws.mkdir(parents=True, exist_ok=True)
        if any(ws.iterdir()):
            raise SandboxSetupError(f"workspace {ws} is not empty")
        entry = ws / code.entrypoint
        entry.parent.mkdir(parents=True, exist_ok=True)
        entry.write_text(code.source, encoding="utf-8")
        (ws / "results").mkdir(exist_ok=True)
    except OSError as exc:
        raise SandboxSetupError(f"workspace setup failed: {exc}") from exc

    cmd = list(shim_cmd or DEFAULT_SHIM_CMD) + [code.entrypoint, "--results", RESULTS_RELPATH]
    start = time.monotonic()
    try:
        proc = subprocess.Popen(
            cmd,
            cwd=ws,
            stdout=subprocess.PIPE,
            stderr=subprocess.PIPE,
            env=_minimal_env(),
            start_new_session=True,  # own process group, killable as a tree
        )
    except OSError as exc:
        raise SandboxSetupError(f"failed to spawn shim: {exc}") from exc

    try:
        out_b, err_b = proc.communicate(timeout=limits.timeout_s)
        timed_out = False
    except subprocess.TimeoutExpired:
        timed_out = True
        _kill_process_group(proc)
        out_b, err_b = proc.communicate()
    wall = time.monotonic() - start

    stdout = out_b.decode("utf-8", "replace")[-limits.output_cap_bytes :]
    stderr = err_b.decode("utf-8", "replace")[-limits.output_cap_bytes :]

    if timed_out:
        return ExecutionOutcome(KIND_TIMEOUT, None, stdout, stderr, wall)

    code_status = proc.returncode
    if code_status == EXIT_INTERNAL:
        raise SandboxSetupError(f"shim internal failure: {stderr[-500:]}")
    if code_status not in EXIT_TO_KIND:
        # a crash of the shim interpreter itself (module missing, signal)
        if "No module named" in stderr:
            raise SandboxSetupError(f"shim unavailable: {stderr[-500:]}")
        return ExecutionOutcome(KIND_RUNTIME, code_status, stdout, stderr, wall)

    kind = EXIT_TO_KIND[code_status]
    results = None
    if kind == KIND_SUCCESS:
        doc, problems = load_results_file(ws / RESULTS_RELPATH)
        if problems:
            # the shim should have caught this; stay defensive
            return ExecutionOutcome(KIND_CONTRACT, code_status, stdout, stderr, wall)
        results = TrainingResults.from_doc(doc)
        if not all(math.isfinite(v) for v in results.episode_returns):
            return ExecutionOutcome(KIND_CONTRACT, code_status, stdout, stderr, wall)
    return ExecutionOutcome(kind, code_status, stdout, stderr, wall, results=results)


def _kill_process_group(proc: subprocess.Popen) -> None:
    try:
        os.killpg(proc.pid, signal.SIGKILL)
    except (ProcessLookupError, PermissionError):
        pass
