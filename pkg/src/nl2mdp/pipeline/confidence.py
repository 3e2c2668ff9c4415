"""Error-correction module: self-confidence scoring and clarification.

After an extraction stage succeeds, the same agent is asked to score its
own output in [0, 1].  Below-threshold scores trigger a re-examination;
once the re-examination budget is spent, the stage escalates to a human
clarification request instead of silently accepting a doubtful artifact.
"""

from __future__ import annotations

import re
import time
from dataclasses import dataclass

from ..ir.parsing import extract_delimited_block

_CONF_RE = re.compile(r"CONFIDENCE:\s*([0-9]*\.?[0-9]+)", re.IGNORECASE)
_RATIONALE_RE = re.compile(r"RATIONALE:\s*(.+)", re.IGNORECASE | re.DOTALL)

VERDICT_ACCEPT = "accept"
VERDICT_REEXAMINE = "reexamine"
VERDICT_CLARIFY = "clarify"


@dataclass(frozen=True)
class ConfidenceReport:
    score: float
    rationale: str
    verdict: str

    def as_dict(self) -> dict:
        return {"score": self.score, "rationale": self.rationale, "verdict": self.verdict}


@dataclass
class ClarificationRequest:
    stage: str
    question: str
    created_at: float
    answer: str | None = None

    def as_dict(self) -> dict:
        return {
            "stage": self.stage,
            "question": self.question,
            "created_at": self.created_at,
            "answer": self.answer,
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "ClarificationRequest":
        return cls(
            stage=doc["stage"],
            question=doc["question"],
            created_at=float(doc.get("created_at", 0.0)),
            answer=doc.get("answer"),
        )


def parse_confidence(raw: str) -> tuple[float, str]:
    """Score and rationale from a self-check response.

    An unparseable score is treated as 0.0, forcing re-examination.
    """
    try:
        block, _ = extract_delimited_block(raw)
    except Exception:
        block = raw
    m = _CONF_RE.search(block)
    if not m:
        return 0.0, "confidence score unparseable; treated as 0"
    try:
        score = float(m.group(1))
    except ValueError:
        return 0.0, "confidence score unparseable; treated as 0"
    score = min(max(score, 0.0), 1.0)
    rm = _RATIONALE_RE.search(block)
    rationale = rm.group(1).strip() if rm else ""
    return score, rationale


def build_report(score: float, rationale: str, threshold: float, exams_left: int) -> ConfidenceReport:
    if score >= threshold:
        verdict = VERDICT_ACCEPT
    elif exams_left > 0:
        verdict = VERDICT_REEXAMINE
    else:
        verdict = VERDICT_CLARIFY
    return ConfidenceReport(score=score, rationale=rationale, verdict=verdict)


def make_clarification(stage: str, report: ConfidenceReport) -> ClarificationRequest:
    detail = report.rationale or "the agent remained unsure after re-examination"
    question = (
        f"The {stage} extraction stayed below the confidence threshold "
        f"(score {report.score:.2f}) after re-examination: {detail} "
        "Please clarify the intended content for this stage."
    )
    return ClarificationRequest(stage=stage, question=question, created_at=time.time())
