"""JSON interchange for coverings and reports.

Floats are written with 17 significant digits, which round-trips every
binary64 value exactly.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np

from .exceptions import SchemaError
from .geom import Covering, Rect

SCHEMA_VERSION = "1"
REPORT_KINDS = ("verdict", "netstats", "constants", "minimization", "search")


class _Float17(float):
    def __repr__(self) -> str:
        text = format(float(self), ".17g")
        return text if any(ch in text for ch in ".en") else text + ".0"


def _prepare(obj: Any) -> Any:
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if not math.isfinite(x):
            raise SchemaError(f"non-finite number {x} cannot be serialized")
        return _Float17(x)
    if isinstance(obj, dict):
        return {str(k): _prepare(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, np.ndarray)):
        return [_prepare(v) for v in obj]
    return obj


class _Encoder(json.JSONEncoder):
    def iterencode(self, o, _one_shot=False):
        # The C encoder ignores float subclasses' repr; the pure-Python path honours float.__repr__.
        return json.encoder._make_iterencode(
            {}, self.default, json.encoder.encode_basestring, self.indent, repr, self.key_separator,
            self.item_separator, self.sort_keys, self.skipkeys, _one_shot,
        )(o, 0)


def dumps(obj: Any) -> str:
    return json.dumps(_prepare(obj), cls=_Encoder, indent=2) + "\n"


@dataclass
class CoveringDocument:
    rect: Rect
    disks: np.ndarray
    metadata: dict = field(default_factory=dict)
    radius: float = 1.0
    schema_version: str = SCHEMA_VERSION

    @classmethod
    def from_covering(cls, c: Covering, metadata: dict | None = None) -> "CoveringDocument":
        return cls(c.rect, np.array(c.centers, dtype=float), dict(metadata or {}))

    def to_covering(self) -> Covering:
        return Covering(self.rect, np.array(self.disks, dtype=float).reshape(-1, 2))

    def to_dict(self) -> dict:
        doc = {
            "schema_version": self.schema_version,
            "rect": {"w": self.rect.width, "h": self.rect.height},
            "disks": [{"x": float(x), "y": float(y)} for x, y in self.disks],
            "radius": self.radius,
        }
        if self.metadata:
            doc["metadata"] = self.metadata
        return doc

    def dumps(self) -> str:
        return dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d: Any) -> "CoveringDocument":
        if not isinstance(d, dict):
            raise SchemaError("covering document must be a JSON object")
        if d.get("schema_version") != SCHEMA_VERSION:
            raise SchemaError(f"unsupported schema_version {d.get('schema_version')!r}")
        if d.get("radius") != 1.0:
            raise SchemaError("radius must be present and equal to 1.0")
        rect = d.get("rect")
        disks = d.get("disks")
        meta = d.get("metadata", {})
        if not isinstance(rect, dict) or not isinstance(disks, list) or not isinstance(meta, dict):
            raise SchemaError("rect must be an object, disks a list and metadata an object")
        try:
            w, h = _number(rect["w"]), _number(rect["h"])
            pts = [(_number(p["x"]), _number(p["y"])) for p in disks]
        except (KeyError, TypeError) as exc:
            raise SchemaError(f"malformed covering document: {exc}") from None
        if not (w > 0 and h > 0):
            raise SchemaError("rect dimensions must be positive")
        return cls(Rect(w, h), np.array(pts, dtype=float).reshape(-1, 2), meta)

    @classmethod
    def loads(cls, text: str) -> "CoveringDocument":
        return cls.from_dict(_parse(text))


def _number(v) -> float:
    if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
        raise SchemaError(f"expected a finite number, got {v!r}")
    return float(v)


def _parse(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"malformed JSON: {exc}") from None


@dataclass
class ReportDocument:
    kind: str
    payload: dict
    schema_version: str = SCHEMA_VERSION

    def __post_init__(self):
        if self.kind not in REPORT_KINDS:
            raise SchemaError(f"unknown report kind {self.kind!r}")
        if not isinstance(self.payload, dict):
            raise SchemaError("report payload must be an object")

    def to_dict(self) -> dict:
        return {"schema_version": self.schema_version, "kind": self.kind, "payload": self.payload}

    def dumps(self) -> str:
        return dumps(self.to_dict())

    @classmethod
    def loads(cls, text: str) -> "ReportDocument":
        d = _parse(text)
        if not isinstance(d, dict) or d.get("schema_version") != SCHEMA_VERSION:
            raise SchemaError("unsupported or missing schema_version")
        return cls(d.get("kind"), d.get("payload"))


def read_covering(path: str | Path) -> CoveringDocument:
    return CoveringDocument.loads(Path(path).read_text())


def write_text(path: str | Path, text: str) -> None:
    Path(path).write_text(text)
