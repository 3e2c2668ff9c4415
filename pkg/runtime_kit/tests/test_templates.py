import json
import subprocess
import sys
from pathlib import Path

import pytest

from rl_runtime_kit.protocol import validate_results_doc
from rl_runtime_kit.templates import TEMPLATE_MODULES

ENTRY = """\
from rl_runtime_kit.templates.{module} import main
raise SystemExit(main({args!r}))
"""


def run_under_shim(tmp_path: Path, task_id: str, episodes: int) -> Path:
    ws = tmp_path / task_id
    ws.mkdir(parents=True, exist_ok=True)
    args = ["--episodes", str(episodes), "--seed", "0", "--eval-episodes", "10"]
    (ws / "main.py").write_text(
        ENTRY.format(module=TEMPLATE_MODULES[task_id], args=args)
    )
    proc = subprocess.run(
        [sys.executable, "-m", "rl_runtime_kit.shim", "main.py"],
        cwd=ws, capture_output=True, timeout=120,
    )
    assert proc.returncode == 0, proc.stderr.decode()
    return ws / "results" / "results.json"


@pytest.mark.parametrize("task_id", sorted(TEMPLATE_MODULES))
def test_template_runs_under_shim_with_valid_results(tmp_path, task_id):
    results_path = run_under_shim(tmp_path, task_id, episodes=25)
    doc = json.loads(results_path.read_text())
    assert validate_results_doc(doc) == []
    assert len(doc["episode_returns"]) == 25
    assert len(doc["eval_returns"]) == 10
    assert (results_path.parent / "model.npz").is_file()


def test_template_results_are_reproducible(tmp_path):
    a = json.loads(run_under_shim(tmp_path / "a", "wireless", 10).read_text())
    b = json.loads(run_under_shim(tmp_path / "b", "wireless", 10).read_text())
    assert a["episode_returns"] == b["episode_returns"]
    assert a["eval_returns"] == b["eval_returns"]


def test_drone_template_reports_completions(tmp_path):
    doc = json.loads(run_under_shim(tmp_path, "drone-delivery", 25).read_text())
    assert "eval_completions" in doc
    assert len(doc["eval_completions"]) == 10
