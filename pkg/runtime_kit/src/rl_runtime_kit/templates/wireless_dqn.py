"""Reference trainer: per-slot user scheduling on the fading channel."""

from __future__ import annotations

from ..dqn import DqnConfig
from ..envs import WirelessSchedulingEnv
from ._runner import parse_args, run_template


def main(argv=None) -> int:
    args = parse_args(argv, default_episodes=100)
    config = DqnConfig(episodes=args.episodes, lr=1e-3, hidden=32)
    run_template(lambda seed: WirelessSchedulingEnv(seed=seed), config, args)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
