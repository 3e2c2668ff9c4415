"""Trial outcome types and success-rate aggregates."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction


@dataclass(frozen=True)
class TrialOutcome:
    """The (M, C, P) verdict triple for one end-to-end trial.

    P=true requires that code existed and ran; the constructor enforces it.
    """

    modeling: bool
    coding: bool
    policy: bool
    evidence: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.policy and not self.evidence.get("execution_ran", True):
            raise ValueError("policy success recorded without an observed execution")

    def as_dict(self) -> dict:
        return {
            "M": self.modeling,
            "C": self.coding,
            "P": self.policy,
            "evidence": self.evidence,
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "TrialOutcome":
        return cls(
            modeling=bool(doc["M"]),
            coding=bool(doc["C"]),
            policy=bool(doc["P"]),
            evidence=doc.get("evidence", {}),
        )


@dataclass(frozen=True)
class SuccessTriplet:
    """Per-criterion success fractions, kept exact until formatting."""

    modeling_rate: Fraction
    coding_rate: Fraction
    policy_rate: Fraction
    trials: int

    def formatted(self) -> str:
        """The reporting form: 'a / b / c' at two decimals."""
        return " / ".join(
            f"{float(r):.2f}"
            for r in (self.modeling_rate, self.coding_rate, self.policy_rate)
        )


@dataclass(frozen=True)
class FailureDistribution:
    """Outcome distribution, with success and failure groups normalized
    independently; empty groups stay empty rather than zero-filled."""

    p_success: dict  # {"M_ok": float, "M_fail": float} or {}
    p_failure: dict  # four (M, C) buckets or {}
    success_counts: dict
    failure_counts: dict

    SUCCESS_KEYS = ("M_ok", "M_fail")
    FAILURE_KEYS = ("M_ok_C_ok", "M_ok_C_fail", "M_fail_C_ok", "M_fail_C_fail")
