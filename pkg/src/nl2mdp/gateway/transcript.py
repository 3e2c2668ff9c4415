"""Recorded completion transcripts: the deterministic replay substrate.

A fixture set is a directory of entry files keyed ``<stage>-<digest>-<ordinal>``.
The digest hashes (stage id, rendered prompt), so a silent template or
serialization change breaks replay loudly instead of silently diverging.
The ordinal is a per-stage call counter, distinguishing legitimately
repeated prompts (re-asks, repair attempts).
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from pathlib import Path


def prompt_digest(stage: str, prompt: str) -> str:
    return hashlib.sha256(f"{stage}\n{prompt}".encode("utf-8")).hexdigest()


@dataclass(frozen=True)
class TranscriptEntry:
    stage: str
    digest: str
    ordinal: int
    response: str
    prompt: str = ""  # stored for inspection; not part of the key

    @property
    def key(self) -> str:
        return f"{self.stage}-{self.digest}-{self.ordinal}"


class TranscriptStore:
    """Directory-backed fixture set of transcript entries."""

    def __init__(self, root: str | Path):
        self.root = Path(root)

    def write(self, entry: TranscriptEntry) -> Path:
        path = self.root / f"{entry.key}.json"
        doc = {
            "stage": entry.stage,
            "digest": entry.digest,
            "ordinal": entry.ordinal,
            "prompt": entry.prompt,
            "response": entry.response,
        }
        try:
            self.root.mkdir(parents=True, exist_ok=True)
            path.write_text(
                json.dumps(doc, indent=2, ensure_ascii=False) + "\n", encoding="utf-8"
            )
        except OSError as exc:
            raise OSError(f"failed to persist transcript entry {entry.key}: {exc}") from exc
        return path

    def load_all(self) -> list[TranscriptEntry]:
        if not self.root.is_dir():
            return []
        entries = []
        for path in sorted(self.root.glob("*.json")):
            doc = json.loads(path.read_text(encoding="utf-8"))
            if not all(k in doc for k in ("stage", "digest", "ordinal", "response")):
                continue  # sidecar file (e.g. oracle baselines), not an entry
            entries.append(
                TranscriptEntry(
                    stage=doc["stage"],
                    digest=doc["digest"],
                    ordinal=int(doc["ordinal"]),
                    response=doc["response"],
                    prompt=doc.get("prompt", ""),
                )
            )
        return entries

    def find(self, stage: str, digest: str) -> list[TranscriptEntry]:
        """Entries for (stage, digest), ordered by ordinal."""
        matches = [
            e for e in self.load_all() if e.stage == stage and e.digest == digest
        ]
        return sorted(matches, key=lambda e: e.ordinal)
