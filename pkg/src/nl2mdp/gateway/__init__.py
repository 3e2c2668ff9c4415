"""Prompt rendering and completion backends (live, replay, scripted)."""

from .backends import (
    BackendConfig,
    CompletionRequest,
    CompletionResponse,
    LiveBackend,
    RecordingBackend,
    ReplayBackend,
    ScriptedBackend,
    make_backend,
)
from .templates import (
    PromptTemplate,
    SLOTS_BY_STAGE,
    load_suffix,
    load_template,
    mask_slots,
    render_prompt,
    slot_values,
    substitute,
)
from .transcript import TranscriptEntry, TranscriptStore, prompt_digest

__all__ = [
    "BackendConfig",
    "CompletionRequest",
    "CompletionResponse",
    "LiveBackend",
    "PromptTemplate",
    "RecordingBackend",
    "ReplayBackend",
    "SLOTS_BY_STAGE",
    "ScriptedBackend",
    "TranscriptEntry",
    "TranscriptStore",
    "load_suffix",
    "load_template",
    "make_backend",
    "mask_slots",
    "prompt_digest",
    "render_prompt",
    "slot_values",
    "substitute",
]
