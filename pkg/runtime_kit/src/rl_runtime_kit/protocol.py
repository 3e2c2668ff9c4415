"""Shim exit-code protocol and results-file schema.

This is the contract shared with the orchestration harness; both sides
implement the same documented table independently.

====================  ===========
exit code             meaning
====================  ===========
0                     success: ran to completion, results file valid
10                    syntax error in the compile-only pre-pass
11                    runtime failure (exception or nonzero SystemExit)
12                    contract violation: results file missing or invalid
13                    shim-internal failure (environment, not the code)
====================  ===========

Timeouts carry no exit code: the parent kills the process group.

Results file (``results/results.json``)::

    {"episode_returns": number[],   # non-empty, finite
     "eval_returns":   number[],    # finite
     "model_path":     string}

Extra keys (eval_seeds, eval_completions, ...) are allowed.
"""

from __future__ import annotations

import json
import math
import os
from pathlib import Path

EXIT_SUCCESS = 0
EXIT_SYNTAX = 10
EXIT_RUNTIME = 11
EXIT_CONTRACT = 12
EXIT_INTERNAL = 13

RESULTS_RELPATH = "results/results.json"

KIND_BY_EXIT = {
    EXIT_SUCCESS: "Success",
    EXIT_SYNTAX: "SyntaxError",
    EXIT_RUNTIME: "RuntimeError",
    EXIT_CONTRACT: "ContractViolation",
}


def validate_results_doc(doc) -> list[str]:
    problems: list[str] = []
    if not isinstance(doc, dict):
        return ["results document is not a JSON object"]
    for key in ("episode_returns", "eval_returns"):
        value = doc.get(key)
        if not isinstance(value, list):
            problems.append(f"{key} missing or not a list")
            continue
        if key == "episode_returns" and not value:
            problems.append("episode_returns is empty")
        for v in value:
            if not isinstance(v, (int, float)) or isinstance(v, bool) or not math.isfinite(v):
                problems.append(f"{key} contains a non-finite or non-numeric value")
                break
    if not isinstance(doc.get("model_path"), str):
        problems.append("model_path missing or not a string")
    return problems


def write_results(
    episode_returns,
    eval_returns,
    model_path: str,
    results_path: str | Path = RESULTS_RELPATH,
    **extras,
) -> Path:
    """Write a schema-valid results file (creating the directory)."""
    doc = {
        "episode_returns": [float(v) for v in episode_returns],
        "eval_returns": [float(v) for v in eval_returns],
        "model_path": model_path,
        **extras,
    }
    problems = validate_results_doc(doc)
    if problems:
        raise ValueError("refusing to write invalid results: " + "; ".join(problems))
    path = Path(results_path)
    os.makedirs(path.parent, exist_ok=True)
    path.write_text(json.dumps(doc) + "\n", encoding="utf-8")
    return path
