"""Reports and their key-sorted text serialization.

The text form has one line per leaf, ``dotted.path = <json value>``, in
sorted order.  Lists are leaves.  Keys must not contain dots or ``" = "``.
"""
from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from typing import Any


class Cert(enum.Enum):
    Exact = "Exact"
    Numeric = "Numeric"
    UpperBoundOnly = "UpperBoundOnly"


@dataclass
class Claim:
    id: str
    ok: bool | None  # None: recorded but no independent check is possible
    expected: Any = None
    observed: Any = None

    def to_dict(self) -> dict:
        return {"id": self.id, "ok": self.ok, "expected": self.expected, "observed": self.observed}


@dataclass
class Report:
    command: str
    inputs: dict = field(default_factory=dict)
    results: dict = field(default_factory=dict)
    certification: Cert = Cert.Exact
    claims: list[Claim] = field(default_factory=list)

    @property
    def failed(self) -> bool:
        return any(c.ok is False for c in self.claims)

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "inputs": self.inputs,
            "results": self.results,
            "certification": self.certification.value,
            "claims": [c.to_dict() for c in self.claims],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Report":
        claims = [Claim(**c) for c in d.get("claims", [])]
        return cls(d["command"], d.get("inputs", {}), d.get("results", {}), Cert(d["certification"]), claims)


def _flatten(obj: Any, prefix: str, out: list[tuple[str, str]]):
    if isinstance(obj, dict) and obj:
        for k in obj:
            key = str(k)
            if "." in key or " = " in key:
                raise ValueError(f"key {key!r} cannot be serialized")
            _flatten(obj[k], f"{prefix}.{key}" if prefix else key, out)
    else:
        out.append((prefix, json.dumps(obj, sort_keys=True)))


def dumps_text(obj: dict) -> str:
    lines: list[tuple[str, str]] = []
    _flatten(obj, "", lines)
    return "".join(f"{k} = {v}\n" for k, v in sorted(lines))


def loads_text(text: str) -> dict:
    root: dict = {}
    for line in text.splitlines():
        if not line.strip():
            continue
        path, _, raw = line.partition(" = ")
        keys = path.split(".")
        node = root
        for k in keys[:-1]:
            node = node.setdefault(k, {})
        node[keys[-1]] = json.loads(raw)
    return root


def dumps_json(obj: dict) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"
