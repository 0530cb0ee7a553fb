"""Deterministic CSV / JSON emission.

Floats are written with 17 significant digits so they round-trip exactly.
The metadata header carries everything that may vary between runs
(timestamp, worker count) and is dropped entirely by ``header=False``.
"""

from __future__ import annotations

import datetime as _dt
import json
import math
from importlib import resources

SCHEMA_NAME = "knds-output"
SCHEMA_VERSION = "1.0.0"

__all__ = ["SCHEMA_NAME", "SCHEMA_VERSION", "format_float", "build_meta", "dump_json",
           "dump_csv", "load_schema"]


def format_float(x: float) -> str:
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return format(x, ".17g")


def _json_value(v) -> str:
    if v is None:
        return "null"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        return format_float(v) if math.isfinite(v) else "null"
    if isinstance(v, str):
        return json.dumps(v)
    if isinstance(v, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {_json_value(x)}" for k, x in v.items()) + "}"
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_json_value(x) for x in v) + "]"
    raise TypeError(f"cannot serialise {type(v).__name__}")


def build_meta(command: str, inputs: dict, run: dict | None = None) -> dict:
    from . import __version__

    run = dict(run or {})
    run.setdefault("generated_at", _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds"))
    return {
        "schema": SCHEMA_NAME,
        "schema_version": SCHEMA_VERSION,
        "tool_version": __version__,
        "command": command,
        "inputs": inputs,
        "run": run,
    }


def dump_json(rows: list, meta: dict | None = None) -> str:
    lines = ["{"]
    if meta is not None:
        lines.append(f'  "meta": {_json_value(meta)},')
    if rows:
        lines.append('  "rows": [')
        body = [f"    {_json_value(row)}" for row in rows]
        lines.append(",\n".join(body))
        lines.append("  ]")
    else:
        lines.append('  "rows": []')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _csv_cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return format_float(v)
    s = str(v)
    if any(ch in s for ch in ',"\n'):
        s = '"' + s.replace('"', '""') + '"'
    return s


def dump_csv(rows: list, columns: list, meta: dict | None = None) -> str:
    out = []
    if meta is not None:
        out.append("# meta: " + _json_value(meta))
    out.append(",".join(columns))
    for row in rows:
        out.append(",".join(_csv_cell(row.get(c)) for c in columns))
    return "\n".join(out) + "\n"


def load_schema() -> dict:
    text = resources.files("knds").joinpath("schema/output.schema.json").read_text()
    return json.loads(text)
