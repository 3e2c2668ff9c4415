"""Completion backends: live HTTP, deterministic replay, scripted, recording.

All backends expose ``complete(stage, prompt) -> CompletionResponse``.
Credentials are read only from the environment variable named in the
backend config file, never from the config itself.
"""

from __future__ import annotations

import json
import os
import threading
import time
from dataclasses import dataclass, field
from pathlib import Path

import requests

from ..errors import AuthError, RateLimited, ReplayMiss, TransportError
from .transcript import TranscriptEntry, TranscriptStore, prompt_digest


@dataclass(frozen=True)
class CompletionRequest:
    stage: str
    prompt: str
    model: str = ""
    temperature: float = 0.0


@dataclass(frozen=True)
class CompletionResponse:
    text: str
    latency_s: float
    backend_id: str
    prompt_tokens: int | None = None
    completion_tokens: int | None = None


@dataclass(frozen=True)
class BackendConfig:
    """Live backend settings loaded from a JSON config file."""

    endpoint: str
    model: str
    credential_env: str = "NL2MDP_API_KEY"
    max_in_flight: int = 4
    retry_attempts: int = 3
    retry_backoff_s: float = 1.0
    temperature: float = 0.0  # deterministic-most decoding by default

    @classmethod
    def load(cls, path: str | Path) -> "BackendConfig":
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
        return cls(
            endpoint=doc["endpoint"],
            model=doc["model"],
            credential_env=doc.get("credential_env", "NL2MDP_API_KEY"),
            max_in_flight=int(doc.get("max_in_flight", 4)),
            retry_attempts=int(doc.get("retry", {}).get("attempts", 3)),
            retry_backoff_s=float(doc.get("retry", {}).get("backoff_s", 1.0)),
            temperature=float(doc.get("temperature", 0.0)),
        )


class LiveBackend:
    """Chat-completions HTTP backend with bounded retries and in-flight cap."""

    def __init__(self, config: BackendConfig, session: requests.Session | None = None):
        self.config = config
        self.backend_id = f"live:{config.model}"
        self._session = session or requests.Session()
        self._slots = threading.Semaphore(config.max_in_flight)

    def _credential(self) -> str:
        key = os.environ.get(self.config.credential_env, "")
        if not key:
            raise AuthError(
                f"credential env var {self.config.credential_env} is not set"
            )
        return key

    def complete(self, stage: str, prompt: str) -> CompletionResponse:
        payload = {
            "model": self.config.model,
            "messages": [{"role": "user", "content": prompt}],
            "temperature": self.config.temperature,
        }
        headers = {"Authorization": f"Bearer {self._credential()}"}
        last_exc: Exception | None = None
        with self._slots:
            for attempt in range(self.config.retry_attempts):
                start = time.monotonic()
                try:
                    resp = self._session.post(
                        self.config.endpoint, json=payload, headers=headers, timeout=120
                    )
                except requests.RequestException as exc:
                    last_exc = exc
                    time.sleep(self.config.retry_backoff_s * (2**attempt))
                    continue
                if resp.status_code in (401, 403):
                    raise AuthError(f"backend rejected credential ({resp.status_code})")
                if resp.status_code == 429:
                    retry_after = resp.headers.get("Retry-After")
                    raise RateLimited(float(retry_after) if retry_after else None)
                if resp.status_code >= 500:
                    last_exc = TransportError(f"server error {resp.status_code}")
                    time.sleep(self.config.retry_backoff_s * (2**attempt))
                    continue
                doc = resp.json()
                text = doc["choices"][0]["message"]["content"]
                if not text:
                    raise TransportError("backend returned an empty completion")
                usage = doc.get("usage", {})
                return CompletionResponse(
                    text=text,
                    latency_s=time.monotonic() - start,
                    backend_id=self.backend_id,
                    prompt_tokens=usage.get("prompt_tokens"),
                    completion_tokens=usage.get("completion_tokens"),
                )
        raise TransportError(f"backend unreachable after retries: {last_exc}")


class ReplayBackend:
    """Serves recorded responses keyed by (stage, prompt digest, ordinal).

    Lookup takes the lowest not-yet-consumed ordinal recorded for the
    (stage, digest) pair, which tolerates stage reordering between runs
    while making any prompt drift fail loudly as a ReplayMiss.
    """

    def __init__(self, fixture_dir: str | Path):
        self.store = TranscriptStore(fixture_dir)
        self.backend_id = f"replay:{fixture_dir}"
        self._entries = self.store.load_all()
        self._consumed: set[str] = set()
        self._lock = threading.Lock()

    def complete(self, stage: str, prompt: str) -> CompletionResponse:
        digest = prompt_digest(stage, prompt)
        with self._lock:
            entry = self._take(stage, digest)
            if entry is not None:
                return CompletionResponse(
                    text=entry.response, latency_s=0.0, backend_id=self.backend_id
                )
        raise ReplayMiss(stage, digest)

    def _take(self, stage: str, digest: str):
        for entry in sorted(
            (e for e in self._entries if e.stage == stage and e.digest == digest),
            key=lambda e: e.ordinal,
        ):
            if entry.key not in self._consumed:
                self._consumed.add(entry.key)
                return entry
        return None

    def preconsume(self, refs: list[dict]) -> None:
        """Replay a prior session's consumption so a resumed run continues
        from where it parked.  `refs` are the (stage, digest) pairs the
        parked run already used, in order; repeated identical prompts
        consume successive ordinals exactly as the original lookups did."""
        with self._lock:
            for ref in refs:
                self._take(ref["stage"], ref["digest"])


class ScriptedBackend:
    """Per-stage response queues; used by tests and the fixture builder."""

    def __init__(self, responses: dict[str, list[str]]):
        self._queues = {stage: list(items) for stage, items in responses.items()}
        self.backend_id = "scripted"
        self._lock = threading.Lock()

    def complete(self, stage: str, prompt: str) -> CompletionResponse:
        with self._lock:
            queue = self._queues.get(stage)
            if not queue:
                raise ReplayMiss(stage, prompt_digest(stage, prompt))
            text = queue.pop(0)
        return CompletionResponse(text=text, latency_s=0.0, backend_id=self.backend_id)


class RecordingBackend:
    """Wraps any backend, appending every exchange to a fixture set.

    Ordinals count calls per stage, seeded from what the store already
    holds so a resumed recording continues the numbering; appends are
    serialized through one lock so concurrent completions cannot
    interleave writes.
    """

    def __init__(self, inner, store: TranscriptStore | str | Path):
        self.inner = inner
        self.store = store if isinstance(store, TranscriptStore) else TranscriptStore(store)
        self.backend_id = f"record({inner.backend_id})"
        self._counters: dict[str, int] = {}
        for entry in self.store.load_all():
            current = self._counters.get(entry.stage, 0)
            self._counters[entry.stage] = max(current, entry.ordinal + 1)
        self._lock = threading.Lock()

    def complete(self, stage: str, prompt: str) -> CompletionResponse:
        response = self.inner.complete(stage, prompt)
        with self._lock:
            ordinal = self._counters.get(stage, 0)
            self._counters[stage] = ordinal + 1
            self.store.write(
                TranscriptEntry(
                    stage=stage,
                    digest=prompt_digest(stage, prompt),
                    ordinal=ordinal,
                    response=response.text,
                    prompt=prompt,
                )
            )
        return response


def make_backend(spec: str, record_dir: str | Path | None = None):
    """Build a backend from a CLI spec string.

    ``replay:<fixture-dir>`` or ``live:<config.json>``; with ``record_dir``
    set, the backend is wrapped so the run is captured as a fixture set.
    """
    if ":" not in spec:
        raise ValueError(f"backend spec must be replay:<dir> or live:<config>: {spec!r}")
    kind, _, arg = spec.partition(":")
    if kind == "replay":
        backend = ReplayBackend(arg)
    elif kind == "live":
        backend = LiveBackend(BackendConfig.load(arg))
    else:
        raise ValueError(f"unknown backend kind {kind!r}")
    if record_dir is not None:
        return RecordingBackend(backend, TranscriptStore(record_dir))
    return backend
