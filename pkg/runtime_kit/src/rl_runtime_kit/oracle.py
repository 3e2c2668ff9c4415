"""Brute-force oracles: exact optima for toy instances by enumeration.

Used to pin down expected values independently of any policy code.  The
instance budget guards against accidental combinatorial blowups; anything
needing more than a million explored sequences is refused.

Standalone usage::

    python -m rl_runtime_kit.oracle wireless --users 3 --steps 4 --seed 7
    python -m rl_runtime_kit.oracle grid --size 3 --seed 5 --horizon 8
"""

from __future__ import annotations

import argparse
import itertools
import sys

from .channel import ChannelModel, shannon_rate_mbps

SEQUENCE_BUDGET = 10**6


class InstanceTooLarge(Exception):
    """Exhaustive enumeration would exceed the sequence budget."""


def wireless_optimum(gain_table: list[list[float]]) -> float:
    """Exact max total rate over all user schedules (N^T enumeration)."""
    steps = len(gain_table)
    users = len(gain_table[0]) if steps else 0
    if users**steps > SEQUENCE_BUDGET:
        raise InstanceTooLarge(f"{users}^{steps} schedules exceed {SEQUENCE_BUDGET}")
    best = float("-inf")
    for schedule in itertools.product(range(users), repeat=steps):
        total = sum(shannon_rate_mbps(g[u]) for g, u in zip(gain_table, schedule))
        best = max(best, total)
    return best


def wireless_schedule_count(users: int, steps: int) -> int:
    return users**steps


def brute_force_oracle(env_factory, horizon: int, n_actions: int) -> float:
    """Exact max episode return over all action sequences up to `horizon`.

    The env follows reset() -> obs, step(a) -> (obs, reward, done).  The
    search replays each prefix from reset (envs must be deterministic given
    their seed), pruning at episode end; the explored-node budget bounds
    the cost instead of a closed-form count because pruning dominates.
    """
    explored = 0
    best = float("-inf")

    def descend(prefix_actions: list[int]) -> None:
        nonlocal explored, best
        env = env_factory()
        env.reset()
        total = 0.0
        done = False
        for a in prefix_actions:
            _, reward, done = env.step(a)
            total += reward
            if done:
                break
        explored += 1
        if explored > SEQUENCE_BUDGET:
            raise InstanceTooLarge(f"explored sequences exceed {SEQUENCE_BUDGET}")
        if done or len(prefix_actions) >= horizon:
            best = max(best, total)
            return
        for a in range(n_actions):
            descend(prefix_actions + [a])

    descend([])
    return best


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    sub = parser.add_subparsers(dest="which", required=True)

    w = sub.add_parser("wireless", help="greedy vs exhaustive optimum on a toy instance")
    w.add_argument("--users", type=int, default=3)
    w.add_argument("--steps", type=int, default=4)
    w.add_argument("--seed", type=int, default=0)

    g = sub.add_parser("grid", help="exhaustive optimum on a toy delivery grid")
    g.add_argument("--size", type=int, default=3)
    g.add_argument("--horizon", type=int, default=7)  # 6^8 prefixes stay in budget
    g.add_argument("--seed", type=int, default=0)

    args = parser.parse_args(argv)

    if args.which == "wireless":
        from .greedy import greedy_return

        distances = (20.0, 50.0, 80.0, 110.0)[: args.users]
        model = ChannelModel(distances_m=distances, seed=args.seed)
        table = model.gain_table(args.steps)
        optimum = wireless_optimum(table)
        greedy = greedy_return(table)
        print(f"schedules enumerated: {wireless_schedule_count(args.users, args.steps)}")
        print(f"optimum total rate:  {optimum:.6f} Mbps")
        print(f"greedy total rate:   {greedy:.6f} Mbps")
        print(f"match: {abs(optimum - greedy) < 1e-9}")
        return 0

    from .envs.drone_grid import DroneGridEnv

    def factory():
        return DroneGridEnv(
            grid_size=args.size, n_packages=1, move_cost=1.0,
            pickup_reward=0.0, delivery_reward=10.0, energy=40,
            horizon=args.horizon, seed=args.seed,
        )

    optimum = brute_force_oracle(factory, horizon=args.horizon, n_actions=6)
    print(f"optimum return: {optimum:.6f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
