"""Greedy wireless scheduler: the evaluation oracle for the wireless task.

Per slot, schedule the user with the highest instantaneous rate.  With a
memoryless per-slot sum-rate reward this is the optimal policy, so its
rollout doubles as the policy-success baseline.  Ties break to the lowest
user index.
"""

from __future__ import annotations

from dataclasses import dataclass

from .channel import (
    BANDWIDTH_MHZ,
    ChannelModel,
    GAIN_MAX_DB,
    GAIN_MIN_DB,
    NOISE_DBM_PER_HZ,
    PATH_LOSS_EXP,
    POWER_MW,
    SHADOWING_STD_DB,
    USER_DISTANCES_M,
    check_gain_range,
    shannon_rate_mbps,
)
from .protocol import write_results


@dataclass(frozen=True)
class GreedyWirelessBaseline:
    """Task parameters the greedy scheduler operates under."""

    bandwidth_mhz: float = BANDWIDTH_MHZ
    power_mw: float = POWER_MW
    noise_dbm_per_hz: float = NOISE_DBM_PER_HZ
    path_loss_exp: float = PATH_LOSS_EXP
    shadowing_std_db: float = SHADOWING_STD_DB
    distances_m: tuple[float, ...] = USER_DISTANCES_M
    gain_range_db: tuple[float, float] = (GAIN_MIN_DB, GAIN_MAX_DB)


def greedy_schedule(gain_table: list[list[float]]) -> list[int]:
    """Per-step argmax user indices for a per-step gain table (dB)."""
    schedule = []
    for gains in gain_table:
        for g in gains:
            check_gain_range(g)
        best = max(range(len(gains)), key=lambda u: (gains[u], -u))
        schedule.append(best)
    return schedule


def greedy_return(gain_table: list[list[float]]) -> float:
    return sum(
        shannon_rate_mbps(gains[u]) for gains, u in zip(gain_table, greedy_schedule(gain_table))
    )


def fixed_user_return(gain_table: list[list[float]], user: int) -> float:
    return sum(shannon_rate_mbps(gains[user]) for gains in gain_table)


def greedy_rollout(gain_table: list[list[float]], steps: int | None = None) -> dict:
    """One greedy episode over a gain table; returns a results document.

    eval_returns holds the single episode's total rate; the schedule is
    exposed as an extra key for inspection.
    """
    if steps is not None:
        gain_table = gain_table[:steps]
    if not gain_table:
        raise ValueError("gain table is empty")
    schedule = greedy_schedule(gain_table)
    total = sum(shannon_rate_mbps(g[u]) for g, u in zip(gain_table, schedule))
    return {
        "episode_returns": [total],
        "eval_returns": [total],
        "model_path": "greedy-baseline",
        "schedule": schedule,
    }


def greedy_baseline_results(
    seeds: list[int], steps: int = 50, results_path=None
) -> dict:
    """Greedy totals over seeded episodes; optionally persisted as a
    results file consumable by the evaluation harness."""
    returns = []
    for seed in seeds:
        model = ChannelModel(seed=seed)
        returns.append(greedy_return(model.gain_table(steps)))
    doc = {
        "episode_returns": list(returns),
        "eval_returns": list(returns),
        "model_path": "greedy-baseline",
        "eval_seeds": list(seeds),
    }
    if results_path is not None:
        write_results(
            doc["episode_returns"], doc["eval_returns"], doc["model_path"],
            results_path, eval_seeds=list(seeds),
        )
    return doc
