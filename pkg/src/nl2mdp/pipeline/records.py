"""Run records: everything one trial produced, persisted incrementally.

Layout of ``runs/<run-id>/``::

    run.json              metadata, attempt history, clarifications, status
    <stage>.json          canonical IR artifact per completed stage
    transcript_refs.json  (stage, digest, ordinal) of every completion used
    code/main.py          final generated source
    results/results.json  training results of the final execution
    outcome.json          (M, C, P) verdicts with evidence

Partial runs stay inspectable: every stage write lands on disk before the
next stage starts.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from ..ir import serialize
from .confidence import ClarificationRequest, ConfidenceReport
from .stages import IR_STAGE_ORDER, StageId

STATUS_RUNNING = "running"
STATUS_PARKED = "parked"
STATUS_COMPLETE = "complete"
STATUS_FAILED = "failed"


@dataclass
class AttemptRecord:
    prompt_digest: str
    response_text: str
    error: str | None = None

    def as_dict(self) -> dict:
        return {
            "prompt_digest": self.prompt_digest,
            "response_text": self.response_text,
            "error": self.error,
        }


@dataclass
class StageResult:
    """One stage's raw output, parsed artifact, validation, confidence."""

    stage: str
    attempts: list[AttemptRecord] = field(default_factory=list)
    artifact: Any = None
    doc: dict | None = None
    warnings: list[str] = field(default_factory=list)
    confidence: ConfidenceReport | None = None

    def as_dict(self) -> dict:
        return {
            "stage": self.stage,
            "attempts": [a.as_dict() for a in self.attempts],
            "warnings": list(self.warnings),
            "confidence": self.confidence.as_dict() if self.confidence else None,
        }


class RunRecord:
    """Mutable trial state bound to a run directory."""

    def __init__(self, run_id: str, task_id: str, description: str, config_doc: dict, root: Path):
        self.run_id = run_id
        self.task_id = task_id
        self.description = description
        self.config_doc = config_doc
        self.root = Path(root)
        self.status = STATUS_RUNNING
        self.stage_results: dict[str, StageResult] = {}
        self.stage_docs: dict[str, dict] = {}
        self.coding_raw: str | None = None
        self.transcript_refs: list[dict] = []
        self.clarifications: list[ClarificationRequest] = []
        self.execution_history: list[dict] = []
        self.created_at = time.time()

    # --- persistence ---------------------------------------------------------

    def save_meta(self) -> None:
        self.root.mkdir(parents=True, exist_ok=True)
        doc = {
            "run_id": self.run_id,
            "task_id": self.task_id,
            "description": self.description,
            "config": self.config_doc,
            "status": self.status,
            "created_at": self.created_at,
            "stages": [
                self.stage_results[s.value].as_dict()
                for s in StageId
                if s.value in self.stage_results
            ],
            "clarifications": [c.as_dict() for c in self.clarifications],
            "execution_history": self.execution_history,
        }
        (self.root / "run.json").write_text(
            json.dumps(doc, indent=2, ensure_ascii=False) + "\n", encoding="utf-8"
        )
        (self.root / "transcript_refs.json").write_text(
            json.dumps(self.transcript_refs, indent=2) + "\n", encoding="utf-8"
        )

    def save_stage(self, result: StageResult) -> None:
        self.stage_results[result.stage] = result
        if result.doc is not None:
            self.stage_docs[result.stage] = result.doc
            self.root.mkdir(parents=True, exist_ok=True)
            (self.root / f"{result.stage}.json").write_text(
                serialize.dumps_canonical(result.doc), encoding="utf-8"
            )
        self.save_meta()

    def save_outcome(self, outcome_doc: dict) -> None:
        self.root.mkdir(parents=True, exist_ok=True)
        (self.root / "outcome.json").write_text(
            json.dumps(outcome_doc, indent=2, ensure_ascii=False) + "\n", encoding="utf-8"
        )

    # --- queries ---------------------------------------------------------------

    def ir_stage_docs(self) -> dict[str, dict]:
        return {
            s.value: self.stage_docs[s.value]
            for s in IR_STAGE_ORDER
            if s.value in self.stage_docs
        }

    def has_all_ir_stages(self) -> bool:
        return all(s.value in self.stage_docs for s in IR_STAGE_ORDER)

    def pending_clarification(self) -> ClarificationRequest | None:
        for c in self.clarifications:
            if c.answer is None:
                return c
        return None

    # --- loading ---------------------------------------------------------------

    @classmethod
    def load(cls, root: str | Path) -> "RunRecord":
        root = Path(root)
        meta = json.loads((root / "run.json").read_text(encoding="utf-8"))
        rec = cls(
            run_id=meta["run_id"],
            task_id=meta["task_id"],
            description=meta["description"],
            config_doc=meta.get("config", {}),
            root=root,
        )
        rec.status = meta.get("status", STATUS_RUNNING)
        rec.created_at = meta.get("created_at", 0.0)
        rec.execution_history = meta.get("execution_history", [])
        rec.clarifications = [
            ClarificationRequest.from_dict(c) for c in meta.get("clarifications", [])
        ]
        for stage_doc in meta.get("stages", []):
            sr = StageResult(stage=stage_doc["stage"])
            sr.warnings = stage_doc.get("warnings", [])
            sr.attempts = [
                AttemptRecord(
                    prompt_digest=a["prompt_digest"],
                    response_text=a["response_text"],
                    error=a.get("error"),
                )
                for a in stage_doc.get("attempts", [])
            ]
            conf = stage_doc.get("confidence")
            if conf:
                sr.confidence = ConfidenceReport(
                    score=conf["score"], rationale=conf["rationale"], verdict=conf["verdict"]
                )
            rec.stage_results[sr.stage] = sr
        for stage in StageId:
            path = root / f"{stage.value}.json"
            if path.is_file():
                rec.stage_docs[stage.value] = json.loads(path.read_text(encoding="utf-8"))
        refs = root / "transcript_refs.json"
        if refs.is_file():
            rec.transcript_refs = json.loads(refs.read_text(encoding="utf-8"))
        code = root / "code" / "main.py"
        if code.is_file():
            rec.coding_raw = code.read_text(encoding="utf-8")
        return rec
