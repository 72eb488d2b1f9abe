"""JSON / CSV / text rendering of report records."""
from __future__ import annotations

import csv
import io
import json
import math
from typing import Any, Iterable, Mapping

JSON_DIGITS = 15
TEXT_DIGITS = 6


def round_floats(obj: Any, digits: int) -> Any:
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, float):
        if not math.isfinite(obj):
            return obj
        return float(f"{obj:.{digits}g}")
    if isinstance(obj, Mapping):
        return {k: round_floats(v, digits) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [round_floats(v, digits) for v in obj]
    if hasattr(obj, "item"):  # numpy scalars
        return round_floats(obj.item(), digits)
    return obj


def to_json(record: Mapping) -> str:
    return json.dumps(round_floats(record, JSON_DIGITS), indent=2)


def to_csv(rows: Iterable[Mapping]) -> str:
    rows = [round_floats(r, JSON_DIGITS) for r in rows]
    if not rows:
        return ""
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
    writer.writeheader()
    for r in rows:
        writer.writerow({k: (json.dumps(v) if isinstance(v, (list, dict)) else v)
                         for k, v in r.items()})
    return buf.getvalue()


def _fmt(v: Any) -> str:
    if isinstance(v, float):
        return f"{v:.{TEXT_DIGITS}g}"
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_fmt(x) for x in v) + "]"
    if isinstance(v, Mapping):
        return "{" + ", ".join(f"{k}: {_fmt(x)}" for k, x in v.items()) + "}"
    return str(v)


def to_text(record: Mapping) -> str:
    width = max((len(str(k)) for k in record), default=0)
    lines = []
    for k, v in record.items():
        if isinstance(v, list) and v and isinstance(v[0], Mapping):
            lines.append(f"{k}:")
            lines.extend("  " + _fmt(item) for item in v)
        else:
            lines.append(f"{str(k).ljust(width)}  {_fmt(v)}")
    return "\n".join(lines) + "\n"
