"""Ok-or-witness results shared by every checker."""
from __future__ import annotations

from dataclasses import dataclass, field

__all__ = ["Verdict", "OK"]


@dataclass(frozen=True)
class Verdict:
    """Outcome of a finite check.

    ``ok`` is the verdict; a failing check names the failing ``kind`` (for
    example "associativity") and carries JSON-friendly ``detail``.
    """

    ok: bool
    kind: str = ""
    detail: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.ok

    @staticmethod
    def fail(kind: str, **detail) -> "Verdict":
        return Verdict(False, kind, detail)

    def to_json(self) -> dict:
        if self.ok:
            return {"verdict": "ok"}
        out = {"verdict": "witness", "kind": self.kind}
        out.update(self.detail)
        return out


OK = Verdict(True)
