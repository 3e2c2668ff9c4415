"""Bundled case-study artifact corpus.

One raw stage response per file; loading re-parses them through the same
extraction path live model output takes, so the corpus doubles as a parser
and validator test bed.
"""

from __future__ import annotations

from importlib import resources

from ..ir import MdpIr, ParseResult, parse_structured_block, serialize

IR_STAGES = (
    "parameter",
    "objective",
    "variable",
    "constraint",
    "objective_modeling",
    "constraint_modeling",
    "sar",
    "env",
)

CASE_STUDY_IDS = (
    "cart-pole",
    "mountain-car",
    "wireless",
    "drone-delivery",
    "inventory-management",
)


def load_raw(task_id: str, stage: str) -> str:
    ref = resources.files(__package__).joinpath(task_id, f"{stage}.txt")
    return ref.read_text(encoding="utf-8")


def load_case_study(task_id: str) -> dict[str, ParseResult]:
    """Parse all eight IR stage responses for a bundled case study."""
    return {stage: parse_structured_block(load_raw(task_id, stage), stage) for stage in IR_STAGES}


def case_study_ir(task_id: str) -> MdpIr:
    parsed = load_case_study(task_id)
    return serialize.assemble_ir({stage: r.doc for stage, r in parsed.items()})
