"""Turning raw coding-stage output into a runnable source artifact."""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from ..errors import NoCodeFound

_CODE_FENCE_RE = re.compile(r"```(?:python|py)?\s*\n(.*?)```", re.DOTALL)

DEFAULT_ENTRYPOINT = "code/main.py"


@dataclass(frozen=True)
class CodeArtifact:
    source: str
    entrypoint: str = DEFAULT_ENTRYPOINT
    spans: tuple[tuple[int, int], ...] = ()  # offsets of extracted blocks in raw
    warnings: tuple[str, ...] = field(default_factory=tuple)


def extract_code(raw: str) -> CodeArtifact:
    """Strip optional fencing/prose from model output, yielding one file.

    Fenced blocks win and surrounding prose is dropped; multiple blocks are
    concatenated in order with a recorded warning (models sometimes split
    the environment and the training loop).  Output without fences is taken
    verbatim as source.
    """
    if not raw or not raw.strip():
        raise NoCodeFound("coding output is empty")

    blocks = [(m.start(1), m.end(1), m.group(1)) for m in _CODE_FENCE_RE.finditer(raw)]
    if not blocks:
        return CodeArtifact(source=raw.strip() + "\n", spans=((0, len(raw)),))

    warnings: tuple[str, ...] = ()
    if len(blocks) > 1:
        warnings = (f"{len(blocks)} fenced blocks concatenated in order",)
    source = "\n".join(b[2].strip("\n") for b in blocks) + "\n"
    if not source.strip():
        raise NoCodeFound("fenced blocks are empty")
    return CodeArtifact(
        source=source,
        spans=tuple((s, e) for s, e, _ in blocks),
        warnings=warnings,
    )
