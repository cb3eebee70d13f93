"""Sweep result rows and their CSV/JSON renderings.

Output bytes must be identical for identical (config, seed), so wall
time stays an in-memory field and floats are printed with %.17g, which
round-trips IEEE doubles exactly.
"""

from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass, field

import numpy as np

SCHEMA_TOKEN = "cwv1"


@dataclass
class SweepRecord:
    """One sweep point: axis values, computed metrics, validity flag.

    grid_index orders the records axis-major regardless of how they were
    computed. wall_time is diagnostic only and never serialized.
    """

    axis_values: tuple[float, ...]
    grid_index: tuple[int, ...]
    metrics: dict
    valid: bool
    wall_time: float = field(default=0.0, compare=False)


def format_float(x: float) -> str:
    return "%.17g" % float(x)


def _format_cell(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    return format_float(value)


def render_csv(records: list[SweepRecord], metric_names: list[str]) -> str:
    """CSV text: header schema,axis1,axis2,<metrics...>,valid then one
    cwv1 row per record. axis2 stays empty for single-axis sweeps."""
    lines = ["schema,axis1,axis2," + ",".join(metric_names) + ",valid"]
    for rec in sorted(records, key=lambda r: r.grid_index):
        axis1 = format_float(rec.axis_values[0])
        axis2 = format_float(rec.axis_values[1]) if len(rec.axis_values) > 1 else ""
        cells = [SCHEMA_TOKEN, axis1, axis2]
        cells += [_format_cell(rec.metrics[name]) for name in metric_names]
        cells.append("true" if rec.valid else "false")
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def _json_cell(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    value = float(value)
    return format_float(value) if np.isfinite(value) else "null"


def render_json(records: list[SweepRecord], config_echo: dict,
                metric_names: list[str]) -> str:
    """JSON text: {schema, config, records}, one record object per line.

    Record numbers are printed with the same %.17g rule as the CSV;
    non-finite metrics become null.
    """
    rows = []
    for rec in sorted(records, key=lambda r: r.grid_index):
        cells = ['"axis1": ' + _json_cell(rec.axis_values[0])]
        axis2 = _json_cell(rec.axis_values[1]) if len(rec.axis_values) > 1 else "null"
        cells.append('"axis2": ' + axis2)
        for name in metric_names:
            cells.append(json.dumps(name) + ": " + _json_cell(rec.metrics[name]))
        cells.append('"valid": ' + ("true" if rec.valid else "false"))
        rows.append("  {" + ", ".join(cells) + "}")
    body = ",\n".join(rows)
    return ('{\n"schema": "%s",\n"config": %s,\n"records": [\n%s\n]\n}\n'
            % (SCHEMA_TOKEN, json.dumps(config_echo, sort_keys=True), body))


def write_atomic(path: str, text: str) -> None:
    """Write text to path via a same-directory temp file and rename."""
    directory = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".cwtmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
