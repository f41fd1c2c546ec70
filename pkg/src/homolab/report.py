"""Deterministic JSON report rendering and input hashing."""
from __future__ import annotations

import hashlib
import json
from fractions import Fraction

TOP_LEVEL_KEYS = (
    "input_hash",
    "invariants",
    "betti",
    "tor",
    "ext",
    "tor_algebra",
    "certificates",
    "caveats",
)


def _normalize(value):
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, dict):
        return {str(k): _normalize(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_normalize(v) for v in value]
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if hasattr(value, "item"):  # numpy scalars
        return value.item()
    raise TypeError(f"non-serializable report value {value!r}")


def render(report: dict) -> str:
    """Byte-stable rendering: sorted keys, fixed separators, no floats."""
    doc = {key: _normalize(report.get(key)) for key in TOP_LEVEL_KEYS}
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=True) + "\n"


def input_hash(material: dict) -> str:
    blob = json.dumps(_normalize(material), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()


def empty_report() -> dict:
    return {key: None for key in TOP_LEVEL_KEYS} | {"certificates": [], "caveats": []}
