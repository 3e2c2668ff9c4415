"""Minimal shim honoring the exit-code protocol; used when no runtime kit
is installed.

Run as ``python -m nl2mdp.executor.stub_shim ENTRYPOINT [--results PATH]``
from inside the workspace.  Compile pre-pass first, so syntax failures are
detected exactly and without side effects; then the program runs in this
process (the executor owns the process group and the timeout).
"""

from __future__ import annotations

import argparse
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
    load_results_file,
)


def run_shim(entrypoint: str, results_path: str) -> int:
    entry = Path(entrypoint)
    if not entry.is_file():
        print(f"shim: entrypoint {entry} not found", file=sys.stderr)
        return EXIT_INTERNAL

    source = entry.read_text(encoding="utf-8")
    try:
        compile(source, str(entry), "exec")
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

    _, problems = load_results_file(results_path)
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
        return run_shim(args.entrypoint, args.results)
    except Exception:
        traceback.print_exc()
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
