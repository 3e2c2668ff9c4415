"""Reference trainer: order-up-to replenishment across ten items."""

from __future__ import annotations

from ..dqn import DqnConfig
from ..envs import InventoryEnv
from ._runner import parse_args, run_template


def main(argv=None) -> int:
    args = parse_args(argv, default_episodes=100)
    config = DqnConfig(episodes=args.episodes, lr=1e-4, hidden=32)
    run_template(lambda seed: InventoryEnv(seed=seed), config, args)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
