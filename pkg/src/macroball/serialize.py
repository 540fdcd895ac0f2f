"""Byte-deterministic report serialization.

JSON is emitted by a small recursive writer instead of json.dumps so
floats always carry exactly 17 significant digits and dict keys keep their
insertion order: two runs with the same configuration must produce
byte-identical reports.  CSV is RFC-4180 (CRLF line endings, mandatory
header, '.' decimal separator regardless of locale).
"""

from __future__ import annotations

import json
import math
from collections.abc import Iterable, Mapping, Sequence


def format_float(x: float) -> str:
    if math.isnan(x) or math.isinf(x):
        raise ValueError(f"cannot serialize non-finite float {x}")
    if x == int(x) and abs(x) < 1e16:
        return f"{x:.1f}"
    return format(x, ".17g")


def json_dumps(obj, indent: int = 2) -> str:
    pieces: list[str] = []
    _emit(obj, pieces, indent, 0)
    pieces.append("\n")
    return "".join(pieces)


def _emit(obj, out: list[str], indent: int, level: int) -> None:
    pad = " " * (indent * (level + 1))
    close_pad = " " * (indent * level)
    if obj is None:
        out.append("null")
    elif isinstance(obj, bool):
        out.append("true" if obj else "false")
    elif isinstance(obj, int):
        out.append(str(obj))
    elif isinstance(obj, float):
        out.append(format_float(obj))
    elif isinstance(obj, str):
        out.append(json.dumps(obj, ensure_ascii=False))
    elif isinstance(obj, Mapping):
        if not obj:
            out.append("{}")
            return
        out.append("{\n")
        for i, (key, val) in enumerate(obj.items()):
            out.append(pad)
            out.append(json.dumps(str(key), ensure_ascii=False))
            out.append(": ")
            _emit(val, out, indent, level + 1)
            out.append(",\n" if i < len(obj) - 1 else "\n")
        out.append(close_pad + "}")
    elif isinstance(obj, Sequence):
        if not obj:
            out.append("[]")
            return
        out.append("[\n")
        for i, val in enumerate(obj):
            out.append(pad)
            _emit(val, out, indent, level + 1)
            out.append(",\n" if i < len(obj) - 1 else "\n")
        out.append(close_pad + "]")
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")


def csv_lines(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    """RFC-4180 CSV: CRLF separators, numeric cells via format_float."""
    def cell(v) -> str:
        if isinstance(v, float):
            return format_float(v)
        s = str(v)
        if any(ch in s for ch in ",\"\r\n"):
            s = '"' + s.replace('"', '""') + '"'
        return s

    lines = [",".join(cell(c) for c in header)]
    for row in rows:
        lines.append(",".join(cell(c) for c in row))
    return "\r\n".join(lines) + "\r\n"
