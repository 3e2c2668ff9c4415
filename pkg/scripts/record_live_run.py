#!/usr/bin/env python3
"""Record a live-backend run as a replay fixture set.

Requires a backend config file (endpoint, model, credential env var) and
the credential exported in the environment::

    export NL2MDP_API_KEY=...
    python3 scripts/record_live_run.py cart-pole \
        --backend-config backend.json --record fixtures-live/cart-pole

The recorded set replays with
``nl2mdp run cart-pole --backend replay:fixtures-live/cart-pole``.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

REPO = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(REPO / "src"))

from nl2mdp.config import RunConfig  # noqa: E402
from nl2mdp.errors import PendingClarification  # noqa: E402
from nl2mdp.gateway import make_backend  # noqa: E402
from nl2mdp.pipeline import run_trial  # noqa: E402
from nl2mdp.tasks import get_task  # noqa: E402


def main() -> int:
    parser = argparse.ArgumentParser()
    parser.add_argument("task")
    parser.add_argument("--backend-config", required=True)
    parser.add_argument("--record", required=True, help="fixture output directory")
    parser.add_argument("--runs-dir", default="runs")
    parser.add_argument("--ec", choices=["on", "off"], default="off")
    args = parser.parse_args()

    config = RunConfig(
        backend=f"live:{args.backend_config}",
        ec_enabled=(args.ec == "on"),
        record_dir=args.record,
        runs_dir=args.runs_dir,
    )
    task = get_task(args.task)
    backend = make_backend(config.backend, config.record_dir)
    try:
        record, outcome = run_trial(
            task, config, backend, f"record-{task.id}", config.runs_dir
        )
    except PendingClarification as exc:
        print(f"run parked at {exc.stage}: {exc.question}")
        print(f"answer with: nl2mdp clarify {Path(args.runs_dir) / exc.run_id} --answer TEXT")
        return 4
    print(f"M={outcome.modeling} C={outcome.coding} P={outcome.policy}")
    print(f"fixtures recorded in {args.record}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
