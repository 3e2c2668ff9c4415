"""Automatic debug-repair loop between the coding stage and the executor.

On any non-success outcome the coding stage is re-invoked with the prior
source and the captured error appended; full regeneration each attempt, no
patching.  Every (code, outcome) pair is kept.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Callable

from .extract import CodeArtifact
from .protocol import KIND_SUCCESS
from .sandbox import ExecLimits, ExecutionOutcome, execute

RegenerateFn = Callable[[str, str], CodeArtifact]


@dataclass(frozen=True)
class RepairResult:
    final: ExecutionOutcome
    history: tuple[tuple[CodeArtifact, ExecutionOutcome], ...]

    @property
    def attempts(self) -> int:
        return len(self.history)


def error_context(outcome: ExecutionOutcome) -> str:
    tail = outcome.stderr.strip()[-4000:]
    return f"outcome: {outcome.kind}\n{tail}" if tail else f"outcome: {outcome.kind}"


def repair_loop(
    initial: CodeArtifact,
    regenerate: RegenerateFn,
    workspace_root: str | Path,
    limits: ExecLimits,
    max_attempts: int = 3,
    shim_cmd: tuple[str, ...] = (),
) -> RepairResult:
    """Execute-and-regenerate until success or the attempt budget runs out.

    `regenerate(prior_source, error_text)` obtains the next artifact; it is
    only called when another attempt will actually run.
    """
    if max_attempts < 1:
        raise ValueError("max_attempts must be >= 1")
    root = Path(workspace_root)
    history: list[tuple[CodeArtifact, ExecutionOutcome]] = []
    artifact = initial

    for attempt in range(max_attempts):
        outcome = execute(artifact, root / f"attempt-{attempt}", limits, shim_cmd)
        history.append((artifact, outcome))
        if outcome.kind == KIND_SUCCESS:
            break
        if attempt + 1 < max_attempts:
            artifact = regenerate(artifact.source, error_context(outcome))

    return RepairResult(final=history[-1][1], history=tuple(history))
