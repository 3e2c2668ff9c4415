"""Extraction of structured payloads from raw model output.

Stages emit either a single JSON object (parameter, variable, constraint,
SAR, env) or a block fenced by ``=====`` lines (objective and the two
modeling stages).  Models wrap payloads in prose despite instructions, so
extraction scans for the first well-formed payload and discards the rest;
extra payloads are reported as warnings, never silently dropped.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Any

from ..errors import MalformedPayload, NoPayloadFound
from . import serialize

_FENCE_RE = re.compile(r"```(?:json)?\s*\n(.*?)```", re.DOTALL)
_INLINE_BLOCK_RE = re.compile(r"^\s*={5,}\s*(\S.*?)\s*={5,}\s*$", re.MULTILINE)
_MARKER_RE = re.compile(r"^\s*={5,}\s*$", re.MULTILINE)
_FORMULA_RE = re.compile(r"\$[^$]+\$")


@dataclass
class ParseResult:
    """Parsed stage artifact plus its canonical document and any warnings."""

    artifact: Any
    doc: dict
    warnings: list[str] = field(default_factory=list)


def _balanced_json_spans(text: str) -> list[str]:
    """All top-level balanced {...} spans, respecting JSON string quoting."""
    spans = []
    depth = 0
    start = -1
    in_str = False
    escape = False
    for i, ch in enumerate(text):
        if in_str:
            if escape:
                escape = False
            elif ch == "\\":
                escape = True
            elif ch == '"':
                in_str = False
            continue
        if ch == '"' and depth > 0:
            in_str = True
        elif ch == "{":
            if depth == 0:
                start = i
            depth += 1
        elif ch == "}":
            if depth > 0:
                depth -= 1
                if depth == 0:
                    spans.append(text[start : i + 1])
    return spans


def extract_json_object(raw: str) -> tuple[dict, list[str]]:
    """First parseable JSON object in the output; fenced blocks win."""
    warnings: list[str] = []
    candidates: list[str] = []
    for m in _FENCE_RE.finditer(raw):
        candidates.extend(_balanced_json_spans(m.group(1)))
    candidates.extend(_balanced_json_spans(raw))

    if not candidates:
        raise NoPayloadFound("no JSON object found in model output")

    parsed: list[dict] = []
    seen: set[str] = set()
    for span in candidates:
        if span in seen:
            continue
        seen.add(span)
        try:
            obj = json.loads(span)
        except json.JSONDecodeError:
            continue
        if isinstance(obj, dict):
            parsed.append(obj)

    if not parsed:
        raise MalformedPayload("JSON-like block found but none parses")
    if len(parsed) > 1:
        warnings.append(f"multiple JSON payloads found ({len(parsed)}); first taken")
    return parsed[0], warnings


def extract_delimited_block(raw: str) -> tuple[str, list[str]]:
    """Content between the first pair of ``=====`` marker lines.

    Also accepts the inline single-line form ``===== content =====``.
    """
    warnings: list[str] = []
    blocks: list[str] = []

    inline_spans = []
    for m in _INLINE_BLOCK_RE.finditer(raw):
        blocks.append(m.group(1).strip())
        inline_spans.append((m.start(), m.end()))

    stripped = raw
    for s, e in reversed(inline_spans):
        stripped = stripped[:s] + stripped[e:]

    markers = list(_MARKER_RE.finditer(stripped))
    for a, b in zip(markers[::2], markers[1::2]):
        content = stripped[a.end() : b.start()].strip()
        if content:
            blocks.append(content)

    if not blocks:
        raise NoPayloadFound("no =====-delimited block found in model output")
    if len(blocks) > 1:
        warnings.append(f"multiple delimited blocks found ({len(blocks)}); first taken")
    return blocks[0], warnings


def _formulas_in(block: str) -> list[str]:
    return [m.group(0) for m in _FORMULA_RE.finditer(block)]


def parse_structured_block(raw: str, stage: str) -> ParseResult:
    """Parse a stage's raw model output into its checked artifact.

    `stage` is a StageId value (e.g. "parameter", "objective_modeling").
    Raises NoPayloadFound / MalformedPayload; ambiguity is a warning.
    """
    if not raw or not raw.strip():
        raise NoPayloadFound("empty model output")

    if stage == "parameter":
        obj, warns = extract_json_object(raw)
        obj = _normalize_decl_payload(obj, "parameters", with_type=True)
        artifact = serialize.parameters_from_doc(obj)
        return ParseResult(artifact, serialize.parameters_doc(artifact), warns)

    if stage == "variable":
        obj, warns = extract_json_object(raw)
        obj = _normalize_decl_payload(obj, "variables", with_type=False)
        artifact = serialize.variables_from_doc(obj)
        return ParseResult(artifact, serialize.variables_doc(artifact), warns)

    if stage == "constraint":
        obj, warns = extract_json_object(raw)
        artifact = serialize.constraints_from_doc(obj)
        return ParseResult(artifact, serialize.constraints_doc(artifact), warns)

    if stage == "sar":
        obj, warns = extract_json_object(raw)
        artifact = serialize.sar_from_doc(obj)
        return ParseResult(artifact, serialize.sar_doc(artifact), warns)

    if stage == "env":
        obj, warns = extract_json_object(raw)
        artifact = serialize.env_from_doc(obj)
        return ParseResult(artifact, serialize.env_doc(artifact), warns)

    if stage == "objective":
        block, warns = extract_delimited_block(raw)
        if block.upper().startswith("OBJECTIVE:"):
            prose = block[len("OBJECTIVE:") :].strip()
        else:
            prose = block
            warns.append("objective block missing OBJECTIVE: label; whole block taken")
        if not prose:
            raise MalformedPayload("objective block is empty")
        artifact = serialize.objective_from_doc({"objective": prose})
        return ParseResult(artifact, serialize.objective_doc(artifact), warns)

    if stage == "objective_modeling":
        block, warns = extract_delimited_block(raw)
        formulas = _formulas_in(block)
        if not formulas:
            raise MalformedPayload("objective-modeling block contains no $...$ formula")
        if len(formulas) > 1:
            warns.append(f"{len(formulas)} formulas in objective block; first taken")
        return ParseResult(
            formulas[0], serialize.objective_formula_doc(formulas[0]), warns
        )

    if stage == "constraint_modeling":
        block, warns = extract_delimited_block(raw)
        formulas = _formulas_in(block)
        if not formulas:
            raise MalformedPayload("constraint-modeling block contains no $...$ formula")
        return ParseResult(
            formulas, serialize.constraint_formulas_doc(formulas), warns
        )

    raise ValueError(f"parse_structured_block does not handle stage {stage!r}")


def _normalize_decl_payload(obj: dict, key: str, with_type: bool) -> dict:
    """Accept both record-list and symbol-keyed declaration payloads.

    The canonical form is ``{"parameters": [{"SYMBOL": ...}, ...]}``; models
    sometimes emit ``{"Bandwidth": {"SHAPE": ...}, ...}`` instead, which is
    rewritten into records (insertion order preserved).
    """
    if key in obj and isinstance(obj[key], list):
        return obj
    records = []
    for sym, attrs in obj.items():
        if not isinstance(attrs, dict):
            raise MalformedPayload(f"declaration entry {sym!r} must be an object")
        rec = {
            "SYMBOL": sym,
            "SHAPE": attrs.get("SHAPE", attrs.get("shape")),
            "DEFINITION": attrs.get("DEFINITION", attrs.get("definition", "")),
        }
        if rec["SHAPE"] is None:
            raise MalformedPayload(f"declaration entry {sym!r} missing SHAPE")
        if with_type:
            rec["TYPE"] = attrs.get("TYPE", attrs.get("type"))
            if rec["TYPE"] is None:
                raise MalformedPayload(f"declaration entry {sym!r} missing TYPE")
        records.append(rec)
    if not records:
        raise MalformedPayload(f"no {key} entries in payload")
    return {key: records}
