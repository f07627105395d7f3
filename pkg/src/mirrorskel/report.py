from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class ValidationReport:
    """Outcome of a validator: an overall flag plus per-item detail.

    ``items`` holds one JSON-friendly dict per checked entity (triangle,
    vertex, edge...). ``problems`` holds human readable failure lines.
    """

    ok: bool
    items: list[dict[str, Any]] = field(default_factory=list)
    problems: list[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok

    def to_dict(self) -> dict[str, Any]:
        return {"ok": self.ok, "items": self.items, "problems": self.problems}
