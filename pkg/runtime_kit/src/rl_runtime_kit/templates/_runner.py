"""Shared scaffolding for the reference trainer templates."""

from __future__ import annotations

import argparse
from pathlib import Path

from ..dqn import DqnConfig, evaluate, train_dqn
from ..protocol import RESULTS_RELPATH, write_results


def parse_args(argv, default_episodes: int):
    parser = argparse.ArgumentParser()
    parser.add_argument("--episodes", type=int, default=default_episodes)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--eval-episodes", type=int, default=20)
    parser.add_argument("--results", default=RESULTS_RELPATH)
    return parser.parse_args(argv)


def run_template(env_factory, config: DqnConfig, args) -> dict:
    """Train, evaluate, persist model and results; returns the results doc."""
    env = env_factory(args.seed)
    episode_returns, net = train_dqn(env, config, seed=args.seed)

    eval_env = env_factory(args.seed + 10_000)
    eval_returns, completions = evaluate(eval_env, net, episodes=args.eval_episodes)

    results_path = Path(args.results)
    model_path = results_path.parent / "model.npz"
    results_path.parent.mkdir(parents=True, exist_ok=True)
    net.save(model_path)

    extras = {}
    if completions:
        extras["eval_completions"] = completions
    write_results(
        episode_returns, eval_returns, str(model_path), results_path, **extras
    )
    print(
        f"episodes={len(episode_returns)} "
        f"mean_eval={sum(eval_returns) / len(eval_returns):.3f}"
    )
    return {
        "episode_returns": episode_returns,
        "eval_returns": eval_returns,
        **extras,
    }
