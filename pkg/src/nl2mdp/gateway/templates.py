"""Prompt templates and staged-context rendering.

Templates are verbatim text assets with named slots in single braces
({description}, {params}, ...).  Substitution touches only the declared
slot names, so literal braces in the in-template format examples survive.
Slot values are the canonical serialized stage documents, which keeps
rendered prompts byte-stable across runs.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from importlib import resources

from ..errors import MissingSlotInput
from ..ir import serialize

SLOT_NAMES = ("description", "params", "vars", "constraints", "objective", "reward", "env")

# slots each stage template consumes; mirrors the stage dependency relation
SLOTS_BY_STAGE: dict[str, tuple[str, ...]] = {
    "parameter": ("description",),
    "objective": ("description", "params"),
    "variable": ("description", "params"),
    "constraint": ("description", "params", "vars"),
    "objective_modeling": ("description", "params", "vars", "constraints", "objective"),
    "constraint_modeling": ("description", "params", "vars", "constraints"),
    "sar": ("description", "params", "vars", "constraints", "objective"),
    "env": ("description", "params", "vars", "reward", "constraints", "objective"),
    "coding": ("env", "params", "vars", "reward", "constraints", "objective"),
}

_SLOT_RE = re.compile(r"\{(" + "|".join(SLOT_NAMES) + r"|extraction|prior|violations|error|prior_code|answer)\}")


@dataclass(frozen=True)
class PromptTemplate:
    stage: str
    body: str

    def slots(self) -> tuple[str, ...]:
        seen = []
        for m in _SLOT_RE.finditer(self.body):
            if m.group(1) not in seen:
                seen.append(m.group(1))
        return tuple(seen)


def _read_asset(name: str) -> str:
    return resources.files(__package__).joinpath("assets", f"{name}.txt").read_text(
        encoding="utf-8"
    )


def load_template(stage: str) -> PromptTemplate:
    return PromptTemplate(stage=stage, body=_read_asset(stage))


def load_suffix(name: str) -> str:
    """Auxiliary blocks appended to stage prompts (re-ask, repair, ...)."""
    return _read_asset(name)


def substitute(body: str, values: dict[str, str]) -> str:
    """Replace declared slots; any slot without a value is an error."""

    def repl(m: re.Match) -> str:
        slot = m.group(1)
        if slot not in values:
            raise MissingSlotInput(slot)
        return values[slot]

    return _SLOT_RE.sub(repl, body)


def slot_values(stage: str, description: str, stage_docs: dict[str, dict]) -> dict[str, str]:
    """Build this stage's slot payloads from prior canonical stage documents.

    Later stages see enriched artifacts: {objective} and {constraints}
    include formulas once the modeling stages ran, and for the coding stage
    {vars} carries the state/action section rather than the raw variables.
    """
    values: dict[str, str] = {}
    for slot in SLOTS_BY_STAGE[stage]:
        if slot == "description":
            values[slot] = description
            continue
        values[slot] = _artifact_slot(slot, stage, stage_docs)
    return values


def _artifact_slot(slot: str, stage: str, docs: dict[str, dict]) -> str:
    def need(stage_key: str) -> dict:
        if stage_key not in docs:
            raise MissingSlotInput(slot)
        return docs[stage_key]

    if slot == "params":
        return serialize.dumps_canonical(need("parameter")).strip()
    if slot == "vars":
        if stage == "coding":
            sar = need("sar")
            return serialize.dumps_canonical(
                {"state": sar["state"], "action": sar["action"]}
            ).strip()
        return serialize.dumps_canonical(need("variable")).strip()
    if slot == "constraints":
        base = need("constraint")["constraints"]
        if "constraint_modeling" in docs:
            formulas = docs["constraint_modeling"]["formulas"]
            merged = [
                {"description": prose, "formula": formulas[i] if i < len(formulas) else ""}
                for i, prose in enumerate(base)
            ]
            return serialize.dumps_canonical({"constraints": merged}).strip()
        return serialize.dumps_canonical({"constraints": base}).strip()
    if slot == "objective":
        prose = need("objective")["objective"]
        if "objective_modeling" in docs:
            return serialize.dumps_canonical(
                {"objective": prose, "formula": docs["objective_modeling"]["formula"]}
            ).strip()
        return serialize.dumps_canonical({"objective": prose}).strip()
    if slot == "reward":
        return serialize.dumps_canonical(need("sar")["reward"]).strip()
    if slot == "env":
        return serialize.dumps_canonical(need("env")).strip()
    raise MissingSlotInput(slot)


def render_prompt(stage: str, description: str, stage_docs: dict[str, dict]) -> str:
    """Render a stage prompt from the task description and prior artifacts."""
    template = load_template(stage)
    return substitute(template.body, slot_values(stage, description, stage_docs))


def mask_slots(template_body: str, rendered: str, values: dict[str, str]) -> bool:
    """Slot-masking diff: rendered text differs from the template only
    inside slot spans.  Used by the template-fidelity checks."""
    parts = _SLOT_RE.split(template_body)
    # parts alternate: literal, slotname, literal, slotname, ...
    pos = 0
    for i, part in enumerate(parts):
        if i % 2 == 0:
            if rendered[pos : pos + len(part)] != part:
                return False
            pos += len(part)
        else:
            value = values.get(part)
            if value is None:
                return False
            if rendered[pos : pos + len(value)] != value:
                return False
            pos += len(value)
    return pos == len(rendered)
