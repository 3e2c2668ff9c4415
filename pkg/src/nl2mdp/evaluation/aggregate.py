"""Aggregation over trial outcomes: rates, failure decomposition, oracle
comparison.  Pure functions over immutable records; exact rational
arithmetic until formatting."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from statistics import fmean, pvariance

from ..errors import EmptyTrialSet, SeedMismatch
from ..executor import TrainingResults
from .outcomes import FailureDistribution, SuccessTriplet, TrialOutcome


def success_rates(trials: list[TrialOutcome]) -> SuccessTriplet:
    if not trials:
        raise EmptyTrialSet("success_rates over zero trials")
    n = len(trials)
    return SuccessTriplet(
        modeling_rate=Fraction(sum(1 for t in trials if t.modeling), n),
        coding_rate=Fraction(sum(1 for t in trials if t.coding), n),
        policy_rate=Fraction(sum(1 for t in trials if t.policy), n),
        trials=n,
    )


def failure_distribution(trials: list[TrialOutcome]) -> FailureDistribution:
    """Bucket P-successes by M and P-failures by (M, C), each group
    normalized independently to sum to 1."""
    if not trials:
        raise EmptyTrialSet("failure_distribution over zero trials")

    s_counts = {"M_ok": 0, "M_fail": 0}
    f_counts = {k: 0 for k in FailureDistribution.FAILURE_KEYS}
    for t in trials:
        if t.policy:
            s_counts["M_ok" if t.modeling else "M_fail"] += 1
        else:
            key = f"M_{'ok' if t.modeling else 'fail'}_C_{'ok' if t.coding else 'fail'}"
            f_counts[key] += 1

    def normalize(counts: dict) -> dict:
        total = sum(counts.values())
        if total == 0:
            return {}
        return {k: v / total for k, v in counts.items()}

    return FailureDistribution(
        p_success=normalize(s_counts),
        p_failure=normalize(f_counts),
        success_counts=s_counts,
        failure_counts=f_counts,
    )


@dataclass(frozen=True)
class OracleComparison:
    mean_ratio: float
    per_episode_ratios: tuple[float, ...]
    policy_variance: float
    oracle_variance: float
    skipped_episodes: int = 0  # zero-return oracle episodes excluded


def compare_to_oracle(
    policy: TrainingResults, oracle: TrainingResults
) -> OracleComparison:
    """Episode-matched comparison of a trained policy against its oracle.

    Both result sets must come from the same episode seeds: checked via the
    optional eval_seeds extra when both carry it, else by episode count.
    """
    p_seeds = policy.extras.get("eval_seeds")
    o_seeds = oracle.extras.get("eval_seeds")
    if p_seeds is not None and o_seeds is not None:
        if list(p_seeds) != list(o_seeds):
            raise SeedMismatch("policy and oracle evaluated on different seeds")
    elif len(policy.eval_returns) != len(oracle.eval_returns):
        raise SeedMismatch(
            f"episode counts differ: {len(policy.eval_returns)} vs {len(oracle.eval_returns)}"
        )

    ratios = []
    skipped = 0
    for p, o in zip(policy.eval_returns, oracle.eval_returns):
        if o == 0:
            skipped += 1
            continue
        ratios.append(p / o)
    if not ratios:
        raise SeedMismatch("no comparable episodes (oracle returns all zero)")

    return OracleComparison(
        mean_ratio=fmean(ratios),
        per_episode_ratios=tuple(ratios),
        policy_variance=pvariance(policy.eval_returns),
        oracle_variance=pvariance(oracle.eval_returns),
        skipped_episodes=skipped,
    )
