"""Canonical report serialization.

Reports are plain dicts assembled from operation outputs (the rendering
layer never recomputes numbers).  The JSON form is canonical: keys sorted,
floats normalized to 12 significant digits, 2-space indent, trailing
newline.  Canonicalization is idempotent, so parse -> render round-trips
byte-identically.
"""

from __future__ import annotations

import json
import math

__all__ = ["canonicalize", "render_json", "parse_json"]


def _canon_float(v: float) -> float:
    if not math.isfinite(v):
        raise ValueError(f"reports cannot carry non-finite numbers, got {v!r}")
    out = float(f"{v:.12g}")
    return 0.0 if out == 0.0 else out  # normalize -0.0


def canonicalize(obj):
    """Recursively normalize a report value for stable rendering."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, (str, int)):
        return obj
    if isinstance(obj, float):
        return _canon_float(obj)
    if isinstance(obj, dict):
        bad = [k for k in obj if not isinstance(k, str)]
        if bad:
            raise ValueError(f"report keys must be strings, got {bad!r}")
        return {k: canonicalize(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [canonicalize(v) for v in obj]
    raise ValueError(f"unsupported report value type: {type(obj).__name__}")


def render_json(report: dict) -> str:
    return json.dumps(canonicalize(report), sort_keys=True, indent=2, ensure_ascii=True) + "\n"


def parse_json(text: str) -> dict:
    return json.loads(text)
