"""JSON and CSV writers with 17-significant-digit numbers.

Seventeen significant digits round-trip every IEEE double exactly, and a fixed
format (instead of ``repr``) keeps output identical across platforms.
"""

from __future__ import annotations

import json
import math
import sys
from pathlib import Path
from typing import Any, Iterable, Sequence


def format_number(x: Any) -> str:
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, int):
        return str(x)
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"cannot serialise non-finite number {x!r}")
    return format(x, ".17g")


def to_json(obj: Any, indent: int = 2, _level: int = 0) -> str:
    """Serialise dicts (in insertion order), sequences, strings and numbers."""
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if obj is None:
        return "null"
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, (bool, int, float)):
        return format_number(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {to_json(v, indent, _level + 1)}"
                 for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(not isinstance(v, (dict, list, tuple)) for v in obj):
            return "[" + ", ".join(to_json(v) for v in obj) + "]"
        items = [pad + to_json(v, indent, _level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    if hasattr(obj, "tolist"):
        return to_json(obj.tolist(), indent, _level)
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def to_csv(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    lines = [",".join(header)]
    width = len(header)
    for row in rows:
        if len(row) != width:
            raise ValueError(f"ragged row: expected {width} fields, got {len(row)}")
        lines.append(",".join(v if isinstance(v, str) else format_number(v) for v in row))
    return "\n".join(lines) + "\n"


def emit(text: str, sink: str | Path | None = None) -> None:
    """Write ``text`` to a file path, or to standard output for ``None``/``-``."""
    if sink is None or str(sink) == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    Path(sink).write_text(text, encoding="utf-8")
