"""Immutable domain types for the MDP intermediate representation."""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .shapes import ShapeExpr

CAMEL_CASE_RE = re.compile(r"^[A-Z][A-Za-z0-9]*$")

PARAMETER_TYPES = ("int", "float", "binary")
ACTION_KINDS = ("discrete", "continuous")
ENV_MODES = ("prebuilt", "custom")


@dataclass(frozen=True)
class ParameterDecl:
    """A known quantity extracted from the task description."""

    symbol: str
    shape: ShapeExpr
    definition: str
    type: str  # one of PARAMETER_TYPES


@dataclass(frozen=True)
class VariableDecl:
    """A quantity the policy or environment determines."""

    symbol: str
    shape: ShapeExpr
    definition: str


@dataclass(frozen=True)
class ObjectiveSpec:
    """Goal statement; formula filled in by the objective-modeling stage."""

    prose: str
    formula: str = ""


@dataclass(frozen=True)
class ConstraintSpec:
    """Feasibility rule; formula filled in by the constraint-modeling stage."""

    prose: str
    formula: str = ""


@dataclass(frozen=True)
class StateSpec:
    variables: tuple[str, ...]
    shape: ShapeExpr


@dataclass(frozen=True)
class ActionSpec:
    variables: tuple[str, ...]
    shape: ShapeExpr
    kind: str  # one of ACTION_KINDS


@dataclass(frozen=True)
class RewardSpec:
    prose: str
    formula: str = ""


@dataclass(frozen=True)
class SarSpec:
    """State / action / reward triple produced by the SAR stage."""

    state: StateSpec
    action: ActionSpec
    reward: RewardSpec


@dataclass(frozen=True)
class EnvSpec:
    """Environment realization: an existing catalog env or custom dynamics."""

    mode: str  # one of ENV_MODES
    prebuilt_id: str | None = None
    transition_logic: str = ""
    termination: str = ""


@dataclass(frozen=True)
class MdpIr:
    """The complete intermediate representation assembled from all stages."""

    parameters: tuple[ParameterDecl, ...]
    variables: tuple[VariableDecl, ...]
    objective: ObjectiveSpec
    constraints: tuple[ConstraintSpec, ...]
    sar: SarSpec
    env: EnvSpec

    def declared_symbols(self) -> set[str]:
        return {p.symbol for p in self.parameters} | {v.symbol for v in self.variables}

    def scalar_int_parameters(self) -> set[str]:
        return {
            p.symbol
            for p in self.parameters
            if p.type == "int" and p.shape.rank == 0
        }


@dataclass(frozen=True)
class Finding:
    """One validation finding; only `violation` severity fails an IR."""

    severity: str  # "violation" | "warning" | "info"
    code: str
    message: str
    where: str = ""

    def as_dict(self) -> dict:
        return {
            "severity": self.severity,
            "code": self.code,
            "message": self.message,
            "where": self.where,
        }


@dataclass(frozen=True)
class ValidationReport:
    findings: tuple[Finding, ...] = field(default_factory=tuple)

    @property
    def violations(self) -> tuple[Finding, ...]:
        return tuple(f for f in self.findings if f.severity == "violation")

    @property
    def warnings(self) -> tuple[Finding, ...]:
        return tuple(f for f in self.findings if f.severity == "warning")

    @property
    def empty(self) -> bool:
        """True iff no violation-severity findings (warnings allowed)."""
        return not self.violations

    def as_dict(self) -> dict:
        return {"findings": [f.as_dict() for f in self.findings]}
