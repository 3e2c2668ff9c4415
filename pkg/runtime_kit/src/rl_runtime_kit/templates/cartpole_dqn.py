"""Reference trainer: pole balancing, desk scale."""

from __future__ import annotations

from ..dqn import DqnConfig
from ..envs import CartPoleEnv
from ._runner import parse_args, run_template


def main(argv=None) -> int:
    args = parse_args(argv, default_episodes=150)
    config = DqnConfig(
        episodes=args.episodes, lr=1e-2, hidden=64,
        train_every=1, target_sync=50, warmup=100, epsilon_decay_fraction=0.8,
    )
    run_template(lambda seed: CartPoleEnv(seed=seed), config, args)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
