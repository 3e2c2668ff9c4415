"""Reference trainer: toy delivery grid with an energy budget."""

from __future__ import annotations

from ..dqn import DqnConfig
from ..envs import DroneGridEnv
from ._runner import parse_args, run_template


def make_env(seed: int) -> DroneGridEnv:
    return DroneGridEnv(grid_size=5, n_packages=1, seed=seed)


def main(argv=None) -> int:
    args = parse_args(argv, default_episodes=200)
    config = DqnConfig(
        episodes=args.episodes, lr=1e-2, gamma=0.95, hidden=64,
        train_every=1, target_sync=50, warmup=100, epsilon_decay_fraction=0.8,
    )
    run_template(make_env, config, args)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
