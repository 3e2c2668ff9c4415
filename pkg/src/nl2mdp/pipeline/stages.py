"""Stage identifiers and their fixed dependency relation."""

from __future__ import annotations

from enum import Enum


class StageId(str, Enum):
    PARAMETER = "parameter"
    OBJECTIVE = "objective"
    VARIABLE = "variable"
    CONSTRAINT = "constraint"
    OBJECTIVE_MODELING = "objective_modeling"
    CONSTRAINT_MODELING = "constraint_modeling"
    SAR = "sar"
    ENV = "env"
    CODING = "coding"


# Each stage runs only after the minimal prerequisites its prompt consumes.
DEPENDENCIES: dict[StageId, frozenset[StageId]] = {
    StageId.PARAMETER: frozenset(),
    StageId.OBJECTIVE: frozenset({StageId.PARAMETER}),
    StageId.VARIABLE: frozenset({StageId.PARAMETER, StageId.OBJECTIVE}),
    StageId.CONSTRAINT: frozenset({StageId.PARAMETER, StageId.VARIABLE}),
    StageId.OBJECTIVE_MODELING: frozenset(
        {StageId.PARAMETER, StageId.VARIABLE, StageId.CONSTRAINT, StageId.OBJECTIVE}
    ),
    StageId.CONSTRAINT_MODELING: frozenset(
        {StageId.PARAMETER, StageId.VARIABLE, StageId.CONSTRAINT}
    ),
    StageId.SAR: frozenset(
        {
            StageId.PARAMETER,
            StageId.OBJECTIVE,
            StageId.VARIABLE,
            StageId.CONSTRAINT,
            StageId.OBJECTIVE_MODELING,
            StageId.CONSTRAINT_MODELING,
        }
    ),
    StageId.ENV: frozenset(
        {
            StageId.PARAMETER,
            StageId.OBJECTIVE,
            StageId.VARIABLE,
            StageId.CONSTRAINT,
            StageId.OBJECTIVE_MODELING,
            StageId.CONSTRAINT_MODELING,
            StageId.SAR,
        }
    ),
    StageId.CODING: frozenset(
        {
            StageId.PARAMETER,
            StageId.OBJECTIVE,
            StageId.VARIABLE,
            StageId.CONSTRAINT,
            StageId.OBJECTIVE_MODELING,
            StageId.CONSTRAINT_MODELING,
            StageId.SAR,
            StageId.ENV,
        }
    ),
}

# A valid topological sort of DEPENDENCIES; the execution order.
STAGE_ORDER: tuple[StageId, ...] = (
    StageId.PARAMETER,
    StageId.OBJECTIVE,
    StageId.VARIABLE,
    StageId.CONSTRAINT,
    StageId.OBJECTIVE_MODELING,
    StageId.CONSTRAINT_MODELING,
    StageId.SAR,
    StageId.ENV,
    StageId.CODING,
)

IR_STAGE_ORDER: tuple[StageId, ...] = STAGE_ORDER[:-1]


def stage_dependencies(stage: StageId | str) -> frozenset[StageId]:
    return DEPENDENCIES[StageId(stage)]
