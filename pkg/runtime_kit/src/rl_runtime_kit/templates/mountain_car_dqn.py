"""Reference trainer: momentum-building car, desk scale."""

from __future__ import annotations

from ..dqn import DqnConfig
from ..envs import MountainCarEnv
from ._runner import parse_args, run_template


def main(argv=None) -> int:
    args = parse_args(argv, default_episodes=120)
    config = DqnConfig(episodes=args.episodes, lr=5e-3, epsilon_decay_fraction=0.7)
    run_template(lambda seed: MountainCarEnv(seed=seed), config, args)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
