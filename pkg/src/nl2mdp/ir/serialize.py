"""Canonical persistence of stage artifacts.

One UTF-8 JSON document per stage, fixed field order, so replay diffs are
byte-stable.  Parameter/variable records use the uppercase SYMBOL / SHAPE /
DEFINITION / TYPE keys; the documented keys for the other stages are lower
case and listed next to each builder below.
"""

from __future__ import annotations

import json
from typing import Any

from ..errors import MalformedPayload
from .shapes import parse_shape
from .types import (
    ActionSpec,
    ConstraintSpec,
    EnvSpec,
    MdpIr,
    ObjectiveSpec,
    ParameterDecl,
    RewardSpec,
    SarSpec,
    StateSpec,
    VariableDecl,
)


def dumps_canonical(doc: Any) -> str:
    """Stable textual form used for files and for prompt slot injection."""
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


# --- stage documents -> canonical dicts -------------------------------------

def parameters_doc(params: list[ParameterDecl] | tuple[ParameterDecl, ...]) -> dict:
    return {
        "parameters": [
            {
                "SYMBOL": p.symbol,
                "SHAPE": p.shape.render(),
                "DEFINITION": p.definition,
                "TYPE": p.type,
            }
            for p in params
        ]
    }


def variables_doc(variables: list[VariableDecl] | tuple[VariableDecl, ...]) -> dict:
    return {
        "variables": [
            {
                "SYMBOL": v.symbol,
                "SHAPE": v.shape.render(),
                "DEFINITION": v.definition,
            }
            for v in variables
        ]
    }


def objective_doc(obj: ObjectiveSpec) -> dict:
    return {"objective": obj.prose}


def constraints_doc(constraints: list[ConstraintSpec] | tuple[ConstraintSpec, ...]) -> dict:
    return {"constraints": [c.prose for c in constraints]}


def objective_formula_doc(formula: str) -> dict:
    return {"formula": formula}


def constraint_formulas_doc(formulas: list[str] | tuple[str, ...]) -> dict:
    return {"formulas": list(formulas)}


def sar_doc(sar: SarSpec) -> dict:
    return {
        "state": {
            "variables": list(sar.state.variables),
            "shape": sar.state.shape.render(),
        },
        "action": {
            "variables": list(sar.action.variables),
            "shape": sar.action.shape.render(),
            "type": sar.action.kind,
        },
        "reward": {
            "description": sar.reward.prose,
            "formula": sar.reward.formula,
        },
    }


def env_doc(env: EnvSpec) -> dict:
    return {
        "mode": env.mode,
        "usage": env.prebuilt_id,
        "transition_logic": env.transition_logic,
        "termination": env.termination,
    }


# --- canonical dicts -> types ------------------------------------------------

def _require(doc: dict, key: str, stage: str) -> Any:
    if not isinstance(doc, dict) or key not in doc:
        raise MalformedPayload(f"{stage} document missing key {key!r}")
    return doc[key]


def parameters_from_doc(doc: dict) -> list[ParameterDecl]:
    records = _require(doc, "parameters", "parameter")
    if not isinstance(records, list):
        raise MalformedPayload("'parameters' must be a list of records")
    out = []
    for rec in records:
        if not isinstance(rec, dict):
            raise MalformedPayload(f"parameter record must be an object: {rec!r}")
        try:
            out.append(
                ParameterDecl(
                    symbol=str(rec["SYMBOL"]),
                    shape=parse_shape(str(rec["SHAPE"])),
                    definition=str(rec.get("DEFINITION", "")),
                    type=str(rec["TYPE"]),
                )
            )
        except KeyError as exc:
            raise MalformedPayload(f"parameter record missing {exc}") from exc
    return out


def variables_from_doc(doc: dict) -> list[VariableDecl]:
    records = _require(doc, "variables", "variable")
    if not isinstance(records, list):
        raise MalformedPayload("'variables' must be a list of records")
    out = []
    for rec in records:
        if not isinstance(rec, dict):
            raise MalformedPayload(f"variable record must be an object: {rec!r}")
        try:
            out.append(
                VariableDecl(
                    symbol=str(rec["SYMBOL"]),
                    shape=parse_shape(str(rec["SHAPE"])),
                    definition=str(rec.get("DEFINITION", "")),
                )
            )
        except KeyError as exc:
            raise MalformedPayload(f"variable record missing {exc}") from exc
    return out


def objective_from_doc(doc: dict) -> ObjectiveSpec:
    return ObjectiveSpec(prose=str(_require(doc, "objective", "objective")))


def constraints_from_doc(doc: dict) -> list[ConstraintSpec]:
    items = _require(doc, "constraints", "constraint")
    if not isinstance(items, list):
        raise MalformedPayload("'constraints' must be a list")
    return [ConstraintSpec(prose=str(i)) for i in items]


def objective_formula_from_doc(doc: dict) -> str:
    return str(_require(doc, "formula", "objective_modeling"))


def constraint_formulas_from_doc(doc: dict) -> list[str]:
    items = _require(doc, "formulas", "constraint_modeling")
    if not isinstance(items, list):
        raise MalformedPayload("'formulas' must be a list")
    return [str(i) for i in items]


def sar_from_doc(doc: dict) -> SarSpec:
    state = _require(doc, "state", "sar")
    action = _require(doc, "action", "sar")
    reward = _require(doc, "reward", "sar")
    try:
        return SarSpec(
            state=StateSpec(
                variables=tuple(str(v) for v in state["variables"]),
                shape=parse_shape(str(state["shape"])),
            ),
            action=ActionSpec(
                variables=tuple(str(v) for v in action["variables"]),
                shape=parse_shape(str(action["shape"])),
                kind=str(action["type"]),
            ),
            reward=RewardSpec(
                prose=str(reward.get("description", "")),
                formula=str(reward.get("formula", "")),
            ),
        )
    except (KeyError, TypeError) as exc:
        raise MalformedPayload(f"sar document malformed: {exc}") from exc


def env_from_doc(doc: dict) -> EnvSpec:
    mode = str(_require(doc, "mode", "env"))
    usage = doc.get("usage")
    return EnvSpec(
        mode=mode,
        prebuilt_id=str(usage) if usage else None,
        transition_logic=str(doc.get("transition_logic", "")),
        termination=str(doc.get("termination", "")),
    )


# --- full IR assembly ---------------------------------------------------------

def assemble_ir(stage_docs: dict[str, dict]) -> MdpIr:
    """Build the full IR from the eight canonical stage documents.

    Expects keys: parameter, objective, variable, constraint,
    objective_modeling, constraint_modeling, sar, env.
    """
    params = parameters_from_doc(stage_docs["parameter"])
    variables = variables_from_doc(stage_docs["variable"])
    objective = objective_from_doc(stage_docs["objective"])
    formula = objective_formula_from_doc(stage_docs["objective_modeling"])
    constraints = constraints_from_doc(stage_docs["constraint"])
    formulas = constraint_formulas_from_doc(stage_docs["constraint_modeling"])

    merged = []
    for i, c in enumerate(constraints):
        merged.append(
            ConstraintSpec(prose=c.prose, formula=formulas[i] if i < len(formulas) else "")
        )

    return MdpIr(
        parameters=tuple(params),
        variables=tuple(variables),
        objective=ObjectiveSpec(prose=objective.prose, formula=formula),
        constraints=tuple(merged),
        sar=sar_from_doc(stage_docs["sar"]),
        env=env_from_doc(stage_docs["env"]),
    )
