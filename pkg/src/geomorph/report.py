"""Machine-readable run reports: JSON (full precision) and TSV (6 decimals).

Reports are plain dicts with a schema version so saved JSON can be
re-rendered later. All numerics are converted to built-in Python types and
serialization sorts keys, so identical runs give byte-identical files.
"""
from __future__ import annotations

import json

import numpy as np

SCHEMA_VERSION = 1


def plain(value):
    """Recursively convert numpy scalars/arrays so json can take them."""
    if isinstance(value, np.ndarray):
        return [plain(v) for v in value.tolist()]
    if isinstance(value, (np.floating, np.integer)):
        return value.item()
    if isinstance(value, dict):
        return {str(k): plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [plain(v) for v in value]
    return value


def labeled_matrix(row_labels, col_labels, entries) -> dict:
    return {
        "row_labels": [str(r) for r in row_labels],
        "col_labels": [str(c) for c in col_labels],
        "entries": plain(np.asarray(entries)),
    }


def matrix_tsv(mat: dict, corner: str = "") -> str:
    lines = ["\t".join([corner] + list(mat["col_labels"]))]
    for label, row in zip(mat["row_labels"], mat["entries"]):
        cells = [f"{v:.6f}" if isinstance(v, float) else str(v) for v in row]
        lines.append("\t".join([label] + cells))
    return "\n".join(lines) + "\n"


def build_report(command: str, config: dict, **sections) -> dict:
    report = {"schema": SCHEMA_VERSION, "command": command, "config": plain(config)}
    for key, value in sections.items():
        report[key] = plain(value)
    return report


def dumps(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def dumps_line(record: dict) -> str:
    """One compact JSON object per line, for trace streams."""
    return json.dumps(plain(record), sort_keys=True, ensure_ascii=False) + "\n"


def loads(text: str) -> dict:
    report = json.loads(text)
    if report.get("schema") != SCHEMA_VERSION:
        raise ValueError(f"unsupported report schema: {report.get('schema')!r}")
    return report


def _kv_lines(report: dict, skip) -> list[str]:
    lines = []
    for key in sorted(report):
        if key in skip:
            continue
        value = report[key]
        if isinstance(value, dict) and set(value) == {"row_labels", "col_labels", "entries"}:
            lines.append(f"# {key}")
            lines.append(matrix_tsv(value).rstrip("\n"))
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            cols = sorted({k for item in value for k in item})
            lines.append(f"# {key}")
            lines.append("\t".join(cols))
            for item in value:
                lines.append(
                    "\t".join(_fmt(item.get(c, "")) for c in cols)
                )
        else:
            lines.append(f"{key}\t{_fmt(value)}")
    return lines


def _round6(v):
    if isinstance(v, float):
        return round(v, 6)
    if isinstance(v, list):
        return [_round6(x) for x in v]
    if isinstance(v, dict):
        return {k: _round6(x) for k, x in v.items()}
    return v


def _fmt(v) -> str:
    if isinstance(v, float):
        return f"{v:.6f}"
    if isinstance(v, (list, dict)):
        return json.dumps(_round6(v), sort_keys=True, ensure_ascii=False)
    if v is None:
        return "-"
    return str(v)


def to_tsv(report: dict) -> str:
    """Render a whole report as sectioned TSV."""
    return "\n".join(_kv_lines(report, skip=("schema",))) + "\n"
