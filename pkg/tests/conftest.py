from __future__ import annotations

from pathlib import Path

import pytest

from nl2mdp.casestudies import IR_STAGES, load_raw
from nl2mdp.config import DEFAULT_POLICY_CRITERIA, PolicyCriterion, RunConfig
from nl2mdp.gateway import ScriptedBackend

REPO = Path(__file__).resolve().parents[1]
FIXTURES = REPO / "fixtures"
GOLDEN_CODE = REPO / "scripts" / "golden_code"

TASK_IDS = ("cart-pole", "mountain-car", "wireless", "drone-delivery", "inventory-management")

# program that trains instantly and writes a valid results file
TRIVIAL_TRAINER = """\
import json, os
os.makedirs("results", exist_ok=True)
open("results/model.txt", "w").write("m")
json.dump({"episode_returns": [1.0, 2.0, 3.0, 4.0], "eval_returns": [4.0, 4.0],
           "model_path": "results/model.txt"}, open("results/results.json", "w"))
"""


@pytest.fixture(scope="session")
def desk_config() -> RunConfig:
    criteria = dict(DEFAULT_POLICY_CRITERIA)
    criteria["wireless"] = PolicyCriterion(
        "wireless",
        "oracle_ratio",
        ratio=0.9,
        oracle_results=str(FIXTURES / "wireless" / "oracle_results.json"),
    )
    return RunConfig(
        backend="replay", ec_enabled=False, exec_timeout_s=120.0, policy_criteria=criteria
    )


def scripted_backend_for(task_id: str, coding_response: str | None = None) -> ScriptedBackend:
    responses = {stage: [load_raw(task_id, stage)] for stage in IR_STAGES}
    if coding_response is None:
        source = (GOLDEN_CODE / f"{task_id}.py").read_text(encoding="utf-8")
        coding_response = f"```python\n{source}```"
    responses["coding"] = [coding_response]
    return ScriptedBackend(responses)


# --- acceptance summary -------------------------------------------------------

_ACCEPTANCE_RESULTS: dict[str, str] = {}


def record_criterion(name: str) -> None:
    """Mark an acceptance criterion as reached; failure flips it in the hook."""
    _ACCEPTANCE_RESULTS[name] = "PASS"


def pytest_runtest_makereport(item, call):
    if call.when != "call":
        return
    marker = item.get_closest_marker("acceptance")
    if marker and marker.args:
        name = marker.args[0]
        if call.excinfo is not None:
            _ACCEPTANCE_RESULTS[name] = "FAIL"
        else:
            _ACCEPTANCE_RESULTS.setdefault(name, "PASS")


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _ACCEPTANCE_RESULTS:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for name, status in _ACCEPTANCE_RESULTS.items():
        terminalreporter.write_line(f"[{status}] {name}")


def pytest_configure(config):
    config.addinivalue_line(
        "markers", "acceptance(name): end-to-end acceptance criterion test"
    )
