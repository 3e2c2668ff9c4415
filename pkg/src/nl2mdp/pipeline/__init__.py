"""Stage state machine, error correction, run records, trial driver."""

from .confidence import (
    ClarificationRequest,
    ConfidenceReport,
    VERDICT_ACCEPT,
    VERDICT_CLARIFY,
    VERDICT_REEXAMINE,
    parse_confidence,
)
from .records import (
    STATUS_COMPLETE,
    STATUS_FAILED,
    STATUS_PARKED,
    STATUS_RUNNING,
    AttemptRecord,
    RunRecord,
    StageResult,
)
from .runner import run_pipeline, run_stage, run_stage_with_ec, self_check
from .stages import DEPENDENCIES, IR_STAGE_ORDER, STAGE_ORDER, StageId, stage_dependencies
from .trial import run_trial, score_trial

__all__ = [
    "AttemptRecord",
    "ClarificationRequest",
    "ConfidenceReport",
    "DEPENDENCIES",
    "IR_STAGE_ORDER",
    "RunRecord",
    "STAGE_ORDER",
    "STATUS_COMPLETE",
    "STATUS_FAILED",
    "STATUS_PARKED",
    "STATUS_RUNNING",
    "StageId",
    "StageResult",
    "VERDICT_ACCEPT",
    "VERDICT_CLARIFY",
    "VERDICT_REEXAMINE",
    "parse_confidence",
    "run_pipeline",
    "run_stage",
    "run_stage_with_ec",
    "run_trial",
    "score_trial",
    "self_check",
    "stage_dependencies",
]
