"""Execution-side toolkit for generated policy-training code: shim,
reference environments and trainers, greedy baseline, brute-force oracles."""

from .channel import ChannelModel, shannon_rate_mbps
from .dqn import DqnConfig, QNetwork, ReplayBuffer, evaluate, train_dqn
from .greedy import (
    GreedyWirelessBaseline,
    fixed_user_return,
    greedy_baseline_results,
    greedy_return,
    greedy_rollout,
    greedy_schedule,
)
from .protocol import (
    EXIT_CONTRACT,
    EXIT_INTERNAL,
    EXIT_RUNTIME,
    EXIT_SUCCESS,
    EXIT_SYNTAX,
    KIND_BY_EXIT,
    RESULTS_RELPATH,
    validate_results_doc,
    write_results,
)

# oracle and shim are also `python -m` entry points; importing them lazily
# keeps runpy from double-executing their module bodies
_LAZY = {
    "InstanceTooLarge": "oracle",
    "brute_force_oracle": "oracle",
    "wireless_optimum": "oracle",
    "shim_execute": "shim",
}


def __getattr__(name: str):
    if name in _LAZY:
        from importlib import import_module

        return getattr(import_module(f"{__name__}.{_LAZY[name]}"), name)
    raise AttributeError(f"module {__name__!r} has no attribute {name!r}")


__all__ = [
    "ChannelModel",
    "DqnConfig",
    "EXIT_CONTRACT",
    "EXIT_INTERNAL",
    "EXIT_RUNTIME",
    "EXIT_SUCCESS",
    "EXIT_SYNTAX",
    "GreedyWirelessBaseline",
    "InstanceTooLarge",
    "KIND_BY_EXIT",
    "QNetwork",
    "RESULTS_RELPATH",
    "ReplayBuffer",
    "brute_force_oracle",
    "evaluate",
    "fixed_user_return",
    "greedy_baseline_results",
    "greedy_return",
    "greedy_rollout",
    "greedy_schedule",
    "shannon_rate_mbps",
    "shim_execute",
    "train_dqn",
    "validate_results_doc",
    "wireless_optimum",
    "write_results",
]
