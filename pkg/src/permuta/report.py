"""Deterministic verification reports with text and JSON renderings."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Any

SCHEMA_VERSION = 1


@dataclass
class Item:
    """One checked statement.  ``verdict`` is None for purely informational items."""

    name: str
    verdict: bool | None
    details: dict[str, Any] = field(default_factory=dict)


@dataclass
class VerificationReport:
    command: list[str]
    config: dict[str, Any]
    items: list[Item] = field(default_factory=list)
    wall_time: float | None = None
    schema: int = SCHEMA_VERSION

    @property
    def verdict(self) -> bool | None:
        """AND of the item verdicts; None when no item carries one."""
        graded = [it.verdict for it in self.items if it.verdict is not None]
        return all(graded) if graded else None

    def to_dict(self) -> dict[str, Any]:
        out = asdict(self)
        out["verdict"] = self.verdict
        return out

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> VerificationReport:
        if data.get("schema") != SCHEMA_VERSION:
            raise ValueError(f"unsupported report schema {data.get('schema')!r}")
        report = cls(
            command=list(data["command"]),
            config=dict(data["config"]),
            items=[Item(it["name"], it["verdict"], dict(it["details"])) for it in data["items"]],
            wall_time=data.get("wall_time"),
            schema=data["schema"],
        )
        if report.verdict != data.get("verdict"):
            raise ValueError("stored verdict disagrees with the items")
        return report

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, text: str) -> VerificationReport:
        return cls.from_dict(json.loads(text))

    def to_text(self) -> str:
        lines = [f"command: {' '.join(self.command)}"]
        for it in self.items:
            mark = {True: "PASS", False: "FAIL", None: "INFO"}[it.verdict]
            lines.append(f"[{mark}] {it.name}")
            for key in sorted(it.details):
                lines.extend(_render(key, it.details[key]))
        graded = sum(it.verdict is not None for it in self.items)
        passed = sum(it.verdict is True for it in self.items)
        lines.append(f"items: {len(self.items)}  graded: {graded}  passed: {passed}")
        verdict = {True: "true", False: "false", None: "n/a"}[self.verdict]
        lines.append(f"verdict: {verdict}")
        if self.wall_time is not None:
            lines.append(f"wall time: {self.wall_time:.3f} s")
        return "\n".join(lines) + "\n"


def _render(key: str, value: Any) -> list[str]:
    if isinstance(value, list) and value and all(isinstance(v, (str, dict)) for v in value):
        return [f"    {key}:"] + [f"      {v if isinstance(v, str) else json.dumps(v, sort_keys=True)}" for v in value]
    return [f"    {key}: {json.dumps(value, sort_keys=True)}"]
