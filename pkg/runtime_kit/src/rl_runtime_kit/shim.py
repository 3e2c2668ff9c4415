"""Sandbox shim: compile pre-pass, run, results-schema enforcement.

Run as ``python -m rl_runtime_kit.shim ENTRYPOINT [--results PATH]`` from
inside the workspace.  The compile-only pre-pass makes syntax failures a
distinct exit code with no execution side effects; the wall-clock timeout
is the parent's job (this process is the one that gets killed).
"""

from __future__ import annotations

import argparse
import json
import runpy
import sys
import traceback
from pathlib import Path

from .protocol import (
    EXIT_CONTRACT,
    EXIT_INTERNAL,
    EXIT_RUNTIME,
    EXIT_SUCCESS,
    EXIT_SYNTAX,
    RESULTS_RELPATH,
    validate_results_doc,
)


def shim_execute(entrypoint: str, results_path: str = RESULTS_RELPATH) -> int:
    """Execute one program under the exit-code protocol; returns the code."""
    entry = Path(entrypoint)
    if not entry.is_file():
        print(f"shim: entrypoint {entry} not found", file=sys.stderr)
        return EXIT_INTERNAL

    try:
        compile(entry.read_text(encoding="utf-8"), str(entry), "exec")
    except SyntaxError:
        traceback.print_exc()
        return EXIT_SYNTAX

    try:
        runpy.run_path(str(entry), run_name="__main__")
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else (0 if exc.code is None else 1)
        if code != 0:
            print(f"shim: program exited with status {code}", file=sys.stderr)
            return EXIT_RUNTIME
    except BaseException:
        traceback.print_exc()
        return EXIT_RUNTIME

    path = Path(results_path)
    if not path.is_file():
        print(f"shim: results contract violated: {path} missing", file=sys.stderr)
        return EXIT_CONTRACT
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        print(f"shim: results contract violated: unreadable: {exc}", file=sys.stderr)
        return EXIT_CONTRACT
    problems = validate_results_doc(doc)
    if problems:
        print("shim: results contract violated: " + "; ".join(problems), file=sys.stderr)
        return EXIT_CONTRACT
    return EXIT_SUCCESS


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser()
    parser.add_argument("entrypoint")
    parser.add_argument("--results", default=RESULTS_RELPATH)
    args = parser.parse_args(argv)
    try:
        return shim_execute(args.entrypoint, args.results)
    except Exception:
        traceback.print_exc()
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
