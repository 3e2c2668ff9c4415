"""Whole-IR validation: the automated modeling-correctness check.

Violations fail the IR; warnings record tolerated drift (lowercase shape
symbols, display aliases, curated helper notation).  An empty report is
what the modeling-success criterion keys on.
"""

from __future__ import annotations

from .latex import extract_latex_symbols
from .lexicon import DISPLAY_ALIASES, classify_undeclared
from .shapes import ShapeExpr
from .types import (
    ACTION_KINDS,
    CAMEL_CASE_RE,
    ENV_MODES,
    Finding,
    MdpIr,
    PARAMETER_TYPES,
    ValidationReport,
)


def _check_shape(
    shape: ShapeExpr, where: str, scalar_ints: set[str], findings: list[Finding]
) -> None:
    for sym in sorted(shape.symbols()):
        if sym in scalar_ints:
            continue
        if sym[0].islower():
            findings.append(
                Finding(
                    "warning",
                    "shape_symbol_undeclared_lowercase",
                    f"shape term {sym!r} is not a declared scalar int parameter",
                    where,
                )
            )
        else:
            findings.append(
                Finding(
                    "violation",
                    "shape_unresolvable",
                    f"shape term {sym!r} does not resolve to a declared scalar int parameter",
                    where,
                )
            )


def _check_formula(
    formula: str, where: str, declared: set[str], findings: list[Finding]
) -> None:
    if not formula:
        return
    for sym in sorted(extract_latex_symbols(formula)):
        if sym in declared:
            continue
        excuse = classify_undeclared(sym)
        if excuse == "alias":
            target = DISPLAY_ALIASES[sym]
            status = "declared" if target in declared else "also undeclared"
            findings.append(
                Finding(
                    "warning",
                    "closure_display_alias",
                    f"{sym!r} treated as display alias of {target!r} ({status})",
                    where,
                )
            )
        elif excuse == "stoplist":
            findings.append(
                Finding(
                    "warning",
                    "closure_helper_notation",
                    f"{sym!r} is curated helper notation, not a declared symbol",
                    where,
                )
            )
        else:
            findings.append(
                Finding(
                    "violation",
                    "closure_unknown_symbol",
                    f"formula references undeclared symbol {sym!r}",
                    where,
                )
            )


def _check_sar_refs(
    symbols: tuple[str, ...], where: str, declared: set[str], findings: list[Finding]
) -> None:
    for sym in symbols:
        if sym in declared:
            continue
        if sym and sym[0].islower():
            findings.append(
                Finding(
                    "warning",
                    "sar_ref_lowercase",
                    f"{where} references lowercase symbol {sym!r} (not a declaration)",
                    where,
                )
            )
            continue
        excuse = classify_undeclared(sym)
        if excuse is not None:
            findings.append(
                Finding(
                    "warning",
                    "sar_ref_helper_notation",
                    f"{where} references curated helper symbol {sym!r}",
                    where,
                )
            )
        else:
            findings.append(
                Finding(
                    "violation",
                    "sar_undeclared_ref",
                    f"{where} references undeclared symbol {sym!r}",
                    where,
                )
            )


def validate_ir(ir: MdpIr) -> ValidationReport:
    """Check the assembled IR; violations are data, not exceptions."""
    findings: list[Finding] = []
    declared = ir.declared_symbols()
    scalar_ints = ir.scalar_int_parameters()

    # declaration lexical rules and duplicates
    seen: set[str] = set()
    for p in ir.parameters:
        if p.symbol in seen:
            findings.append(
                Finding("violation", "duplicate_symbol",
                        f"symbol {p.symbol!r} declared more than once", "parameters")
            )
        seen.add(p.symbol)
        if not CAMEL_CASE_RE.match(p.symbol):
            findings.append(
                Finding("violation", "symbol_not_camel_case",
                        f"parameter symbol {p.symbol!r} violates the CamelCase rule",
                        "parameters")
            )
        if p.type not in PARAMETER_TYPES:
            findings.append(
                Finding("violation", "parameter_type_invalid",
                        f"parameter {p.symbol!r} has type {p.type!r}, "
                        f"expected one of {PARAMETER_TYPES}", "parameters")
            )
    for v in ir.variables:
        if v.symbol in seen:
            findings.append(
                Finding("violation", "duplicate_symbol",
                        f"symbol {v.symbol!r} declared more than once", "variables")
            )
        seen.add(v.symbol)
        if not CAMEL_CASE_RE.match(v.symbol):
            findings.append(
                Finding("violation", "symbol_not_camel_case",
                        f"variable symbol {v.symbol!r} violates the CamelCase rule",
                        "variables")
            )

    # shape resolution
    for p in ir.parameters:
        _check_shape(p.shape, f"parameters.{p.symbol}", scalar_ints, findings)
    for v in ir.variables:
        _check_shape(v.shape, f"variables.{v.symbol}", scalar_ints, findings)
    _check_shape(ir.sar.state.shape, "sar.state", scalar_ints, findings)
    _check_shape(ir.sar.action.shape, "sar.action", scalar_ints, findings)

    # symbol closure on every formula
    _check_formula(ir.objective.formula, "objective.formula", declared, findings)
    for i, c in enumerate(ir.constraints):
        _check_formula(c.formula, f"constraints[{i}].formula", declared, findings)
    _check_formula(ir.sar.reward.formula, "sar.reward.formula", declared, findings)

    # SAR references and action kind
    _check_sar_refs(ir.sar.state.variables, "sar.state", declared, findings)
    _check_sar_refs(ir.sar.action.variables, "sar.action", declared, findings)
    if ir.sar.action.kind not in ACTION_KINDS:
        findings.append(
            Finding("violation", "action_kind_invalid",
                    f"action kind {ir.sar.action.kind!r} not in {ACTION_KINDS}",
                    "sar.action")
        )
    elif ir.sar.action.kind != "discrete":
        findings.append(
            Finding("violation", "action_kind_unsupported",
                    "action kind must be discrete for the value-based training backbone",
                    "sar.action")
        )

    # env mode consistency
    if ir.env.mode not in ENV_MODES:
        findings.append(
            Finding("violation", "env_mode_invalid",
                    f"env mode {ir.env.mode!r} not in {ENV_MODES}", "env")
        )
    elif ir.env.mode == "prebuilt" and not ir.env.prebuilt_id:
        findings.append(
            Finding("violation", "env_mode_inconsistent",
                    "prebuilt env without a catalog identifier", "env")
        )
    elif ir.env.mode == "custom" and not ir.env.transition_logic.strip():
        findings.append(
            Finding("violation", "env_mode_inconsistent",
                    "custom env without transition logic", "env")
        )

    return ValidationReport(findings=tuple(findings))
