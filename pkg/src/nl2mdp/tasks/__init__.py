"""Bundled benchmark task corpus: identifier plus free-form description."""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from ..errors import TaskNotFound

BUNDLED_TASK_IDS = (
    "cart-pole",
    "mountain-car",
    "wireless",
    "drone-delivery",
    "inventory-management",
)


@dataclass(frozen=True)
class TaskSpec:
    id: str
    description: str


def _read_bundled(task_id: str) -> str:
    ref = resources.files(__package__).joinpath(f"{task_id}.txt")
    return ref.read_text(encoding="utf-8")


def get_task(ref: str) -> TaskSpec:
    """Resolve a task reference: bundled id, or path to a description file."""
    if ref in BUNDLED_TASK_IDS:
        return TaskSpec(id=ref, description=_read_bundled(ref).strip())
    p = Path(ref)
    if p.is_file():
        return TaskSpec(id=p.stem, description=p.read_text(encoding="utf-8").strip())
    raise TaskNotFound(
        f"{ref!r} is neither a bundled task ({', '.join(BUNDLED_TASK_IDS)}) nor a file"
    )


def all_bundled() -> list[TaskSpec]:
    return [get_task(t) for t in BUNDLED_TASK_IDS]
