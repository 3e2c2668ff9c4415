"""Intermediate representation: types, parsers, validators, persistence."""

from .latex import extract_latex_symbols
from .parsing import ParseResult, parse_structured_block
from .shapes import ShapeDim, ShapeExpr, parse_shape
from .types import (
    ActionSpec,
    ConstraintSpec,
    EnvSpec,
    Finding,
    MdpIr,
    ObjectiveSpec,
    ParameterDecl,
    RewardSpec,
    SarSpec,
    StateSpec,
    ValidationReport,
    VariableDecl,
)
from .validate import validate_ir
from . import serialize

__all__ = [
    "ActionSpec",
    "ConstraintSpec",
    "EnvSpec",
    "Finding",
    "MdpIr",
    "ObjectiveSpec",
    "ParameterDecl",
    "ParseResult",
    "RewardSpec",
    "SarSpec",
    "ShapeDim",
    "ShapeExpr",
    "StateSpec",
    "ValidationReport",
    "VariableDecl",
    "extract_latex_symbols",
    "parse_shape",
    "parse_structured_block",
    "serialize",
    "validate_ir",
]
