"""Delimited output for sweep tables.

CSV renders numbers with 9 significant digits, LF line endings, and a
fixed header; JSON is an array of row objects with the same keys in the
same order and full round-trip precision.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

from .volume import SweepTable

COLUMNS = (
    "param",
    "gamma_quantum",
    "gamma_separable",
    "gamma_entangled",
    "ratio",
    "std_error_quantum",
    "std_error_separable",
    "std_error_entangled",
    "std_error_ratio",
)


def table_rows(table: SweepTable) -> list[dict]:
    """Rows as ordered plain dicts keyed by :data:`COLUMNS`."""
    rows = []
    for r in table.rows:
        rows.append(
            {
                "param": r.param_value,
                "gamma_quantum": r.gamma_quantum.value,
                "gamma_separable": r.gamma_separable.value,
                "gamma_entangled": r.gamma_entangled.value,
                "ratio": r.ratio,
                "std_error_quantum": r.gamma_quantum.std_error,
                "std_error_separable": r.gamma_separable.std_error,
                "std_error_entangled": r.gamma_entangled.std_error,
                "std_error_ratio": r.ratio_std_error,
            }
        )
    return rows


def _csv_cell(x: float) -> str:
    if isinstance(x, float) and math.isnan(x):
        return "nan"
    return f"{x:.9g}"


def render_csv(table: SweepTable) -> str:
    lines = [",".join(COLUMNS)]
    for row in table_rows(table):
        lines.append(",".join(_csv_cell(row[c]) for c in COLUMNS))
    return "\n".join(lines) + "\n"


def render_json(table: SweepTable) -> str:
    return json.dumps(table_rows(table), indent=2, allow_nan=True) + "\n"


def emit_table(table: SweepTable, fmt: str, path) -> None:
    """Write a sweep table to ``path`` as ``csv`` or ``json``."""
    if fmt == "csv":
        text = render_csv(table)
    elif fmt == "json":
        text = render_json(table)
    else:
        raise ValueError(f"unknown table format {fmt!r}; expected 'csv' or 'json'")
    Path(path).write_text(text, encoding="utf-8", newline="\n")
