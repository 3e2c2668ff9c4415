"""Shim exit-code protocol and the results-file contract.

Any shim honoring this table is interchangeable: the built-in stub used by
the test suite, or the runtime kit's shim installed separately.  Exit codes
map one-to-one onto outcome kinds; timeouts have no exit code because the
parent kills the process group.

====================  ===========
exit code             meaning
====================  ===========
0                     success: ran to completion, results file valid
10                    syntax error in the compile-only pre-pass
11                    runtime failure (exception or nonzero SystemExit)
12                    contract violation: results file missing or invalid
13                    shim-internal failure (environment, not the code)
====================  ===========
"""

from __future__ import annotations

import json
import math
from pathlib import Path

EXIT_SUCCESS = 0
EXIT_SYNTAX = 10
EXIT_RUNTIME = 11
EXIT_CONTRACT = 12
EXIT_INTERNAL = 13

RESULTS_RELPATH = "results/results.json"

KIND_SUCCESS = "Success"
KIND_SYNTAX = "SyntaxError"
KIND_RUNTIME = "RuntimeError"
KIND_TIMEOUT = "Timeout"
KIND_CONTRACT = "ContractViolation"

OUTCOME_KINDS = (KIND_SUCCESS, KIND_SYNTAX, KIND_RUNTIME, KIND_TIMEOUT, KIND_CONTRACT)

EXIT_TO_KIND = {
    EXIT_SUCCESS: KIND_SUCCESS,
    EXIT_SYNTAX: KIND_SYNTAX,
    EXIT_RUNTIME: KIND_RUNTIME,
    EXIT_CONTRACT: KIND_CONTRACT,
}


def validate_results_doc(doc) -> list[str]:
    """Schema check for a parsed results document; empty list means valid."""
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


def load_results_file(path: str | Path) -> tuple[dict | None, list[str]]:
    path = Path(path)
    if not path.is_file():
        return None, [f"results file {path} does not exist"]
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        return None, [f"results file unreadable: {exc}"]
    problems = validate_results_doc(doc)
    return (doc if not problems else None), problems
