import json
import threading
from http.server import BaseHTTPRequestHandler, HTTPServer

import pytest

from nl2mdp.errors import AuthError, MissingSlotInput, RateLimited, ReplayMiss, TransportError
from nl2mdp.gateway import (
    BackendConfig,
    LiveBackend,
    RecordingBackend,
    ReplayBackend,
    SLOTS_BY_STAGE,
    ScriptedBackend,
    TranscriptStore,
    load_template,
    mask_slots,
    prompt_digest,
    render_prompt,
    slot_values,
    substitute,
)
from nl2mdp.tasks import get_task

PARAM_DOC = {
    "parameters": [
        {"SYMBOL": "Alpha", "SHAPE": "[]", "DEFINITION": "a", "TYPE": "float"}
    ]
}
VAR_DOC = {"variables": [{"SYMBOL": "Beta", "SHAPE": "[]", "DEFINITION": "b"}]}
CONSTRAINT_DOC = {"constraints": ["Beta stays small."]}
OBJECTIVE_DOC = {"objective": "maximize Alpha usage"}


def docs_through(stage_keys):
    all_docs = {
        "parameter": PARAM_DOC,
        "objective": OBJECTIVE_DOC,
        "variable": VAR_DOC,
        "constraint": CONSTRAINT_DOC,
        "objective_modeling": {"formula": "$J$"},
        "constraint_modeling": {"formulas": ["$1=1$"]},
        "sar": {
            "state": {"variables": ["Alpha"], "shape": "[1]"},
            "action": {"variables": ["Beta"], "shape": "[1]", "type": "discrete"},
            "reward": {"description": "r", "formula": "$R_t$"},
        },
        "env": {"mode": "custom", "usage": None, "transition_logic": "t", "termination": "e"},
    }
    return {k: all_docs[k] for k in stage_keys}


def test_parameter_prompt_contains_task_description():
    task = get_task("cart-pole")
    prompt = render_prompt("parameter", task.description, {})
    assert "a pole is attached on a cart" in prompt
    assert "{description}" not in prompt


def test_missing_slot_input_names_the_artifact():
    with pytest.raises(MissingSlotInput) as exc:
        render_prompt("objective", "desc", {})
    assert exc.value.slot == "params"


def test_coding_prompt_renders_all_blocks():
    docs = docs_through(
        ["parameter", "objective", "variable", "constraint",
         "objective_modeling", "constraint_modeling", "sar", "env"]
    )
    prompt = render_prompt("coding", "desc", docs)
    for fragment in ("1000 episodes", "results/results.json", '"mode": "custom"'):
        assert fragment in prompt
    # {vars} for the coding stage is the state/action section
    assert '"state"' in prompt


@pytest.mark.parametrize("stage", sorted(SLOTS_BY_STAGE))
def test_template_fidelity_slot_masking(stage):
    """Rendered prompts differ from the template assets only in slot spans."""
    template = load_template(stage)
    values = {slot: f"<<{slot}-value>>" for slot in SLOTS_BY_STAGE[stage]}
    rendered = substitute(template.body, values)
    assert mask_slots(template.body, rendered, values)
    # corrupting a non-slot span must break the mask
    assert not mask_slots(template.body, rendered.replace("Take a deep breath", "X"), values)


def test_slot_values_enrich_after_modeling():
    stage_keys = ["parameter", "objective", "variable", "constraint",
                  "objective_modeling", "constraint_modeling"]
    values = slot_values("sar", "d", docs_through(stage_keys))
    assert "formula" in values["objective"]
    assert "formula" in values["constraints"]


# --- transcript record / replay -------------------------------------------------


def test_record_then_replay_byte_identical(tmp_path):
    responses = {"parameter": ["resp-A", "resp-B"]}
    rec = RecordingBackend(ScriptedBackend(responses), tmp_path / "fx")
    assert rec.complete("parameter", "prompt-1").text == "resp-A"
    assert rec.complete("parameter", "prompt-2").text == "resp-B"

    replay = ReplayBackend(tmp_path / "fx")
    assert replay.complete("parameter", "prompt-1").text == "resp-A"
    assert replay.complete("parameter", "prompt-2").text == "resp-B"


def test_replay_tolerates_reordered_lookups(tmp_path):
    rec = RecordingBackend(ScriptedBackend({"s": ["one", "two"]}), tmp_path / "fx")
    rec.complete("s", "p1")
    rec.complete("s", "p2")
    replay = ReplayBackend(tmp_path / "fx")
    assert replay.complete("s", "p2").text == "two"
    assert replay.complete("s", "p1").text == "one"


def test_repeated_identical_prompts_get_distinct_ordinals(tmp_path):
    rec = RecordingBackend(ScriptedBackend({"s": ["first", "second"]}), tmp_path / "fx")
    rec.complete("s", "same")
    rec.complete("s", "same")
    entries = TranscriptStore(tmp_path / "fx").load_all()
    assert sorted(e.ordinal for e in entries) == [0, 1]
    replay = ReplayBackend(tmp_path / "fx")
    assert replay.complete("s", "same").text == "first"
    assert replay.complete("s", "same").text == "second"
    with pytest.raises(ReplayMiss):
        replay.complete("s", "same")


def test_repair_style_three_calls_ordinals_zero_to_two(tmp_path):
    rec = RecordingBackend(
        ScriptedBackend({"coding": ["c0", "c1", "c2"]}), tmp_path / "fx"
    )
    for i in range(3):
        rec.complete("coding", f"coding-prompt-{i}")
    entries = sorted(TranscriptStore(tmp_path / "fx").load_all(), key=lambda e: e.ordinal)
    assert [e.ordinal for e in entries] == [0, 1, 2]
    assert [e.response for e in entries] == ["c0", "c1", "c2"]


def test_replay_miss_names_stage_and_digest(tmp_path):
    (tmp_path / "fx").mkdir()
    replay = ReplayBackend(tmp_path / "fx")
    with pytest.raises(ReplayMiss) as exc:
        replay.complete("parameter", "never recorded")
    assert exc.value.stage == "parameter"
    assert exc.value.digest == prompt_digest("parameter", "never recorded")


def test_digest_binds_stage_and_prompt():
    assert prompt_digest("a", "p") != prompt_digest("b", "p")
    assert prompt_digest("a", "p") != prompt_digest("a", "q")
    assert prompt_digest("a", "p") == prompt_digest("a", "p")


def test_persistence_failure_names_the_entry(tmp_path):
    blocked = tmp_path / "blocked"
    blocked.write_text("a file where the store wants a directory")
    rec = RecordingBackend(ScriptedBackend({"s": ["resp"]}), blocked)
    with pytest.raises(OSError) as exc:
        rec.complete("s", "prompt")
    assert "s-" in str(exc.value)  # failed entry key is part of the error


# --- live backend over a local HTTP server --------------------------------------


class _Handler(BaseHTTPRequestHandler):
    behaviors: list[str] = []
    calls = 0

    def do_POST(self):
        kind = self.behaviors[min(_Handler.calls, len(self.behaviors) - 1)]
        _Handler.calls += 1
        if kind == "auth":
            self.send_response(401)
            self.end_headers()
            return
        if kind == "rate":
            self.send_response(429)
            self.send_header("Retry-After", "7")
            self.end_headers()
            return
        if kind == "flaky":
            self.send_response(500)
            self.end_headers()
            return
        body = json.dumps(
            {
                "choices": [{"message": {"content": "live says hi"}}],
                "usage": {"prompt_tokens": 5, "completion_tokens": 3},
            }
        ).encode()
        self.send_response(200)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    def log_message(self, *args):
        pass


@pytest.fixture()
def live_server():
    server = HTTPServer(("127.0.0.1", 0), _Handler)
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    yield f"http://127.0.0.1:{server.server_port}/v1/chat/completions"
    server.shutdown()


def _live(endpoint, monkeypatch, attempts=3):
    monkeypatch.setenv("TEST_MODEL_KEY", "secret")
    return LiveBackend(
        BackendConfig(
            endpoint=endpoint,
            model="test-model",
            credential_env="TEST_MODEL_KEY",
            retry_attempts=attempts,
            retry_backoff_s=0.01,
        )
    )


def test_live_happy_path(live_server, monkeypatch):
    _Handler.behaviors, _Handler.calls = ["ok"], 0
    response = _live(live_server, monkeypatch).complete("parameter", "hello")
    assert response.text == "live says hi"
    assert response.prompt_tokens == 5


def test_live_missing_credential(live_server, monkeypatch):
    monkeypatch.delenv("TEST_MODEL_KEY", raising=False)
    backend = LiveBackend(
        BackendConfig(endpoint=live_server, model="m", credential_env="TEST_MODEL_KEY")
    )
    with pytest.raises(AuthError):
        backend.complete("parameter", "hello")


def test_live_rejected_credential(live_server, monkeypatch):
    _Handler.behaviors, _Handler.calls = ["auth"], 0
    with pytest.raises(AuthError):
        _live(live_server, monkeypatch).complete("parameter", "hello")


def test_live_rate_limited_surfaces_retry_after(live_server, monkeypatch):
    _Handler.behaviors, _Handler.calls = ["rate"], 0
    with pytest.raises(RateLimited) as exc:
        _live(live_server, monkeypatch).complete("parameter", "hello")
    assert exc.value.retry_after == 7.0


def test_live_retries_transient_failures(live_server, monkeypatch):
    _Handler.behaviors, _Handler.calls = ["flaky", "flaky", "ok"], 0
    response = _live(live_server, monkeypatch).complete("parameter", "hello")
    assert response.text == "live says hi"
    assert _Handler.calls == 3


def test_live_gives_up_after_retries(live_server, monkeypatch):
    _Handler.behaviors, _Handler.calls = ["flaky"], 0
    with pytest.raises(TransportError):
        _live(live_server, monkeypatch, attempts=2).complete("parameter", "hello")
