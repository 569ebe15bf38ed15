import csv
import json
from datetime import datetime
from typing import Iterable, Optional, TextIO

import numpy as np


def format_timestamp(moment: Optional[datetime] = None) -> str:
    """HH:MM:SS.mmm, the stamp used on every log line."""
    return (moment or datetime.now()).strftime("%H:%M:%S.%f")[:-3]


def to_jsonable(value):
    """Plain JSON types for reports: numpy scalars unwrapped, complex as [re, im]."""
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return to_jsonable(value.tolist())
    if isinstance(value, (complex, np.complexfloating)):
        return [float(value.real), float(value.imag)]
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    return value


def format_report(report: dict) -> str:
    return json.dumps(to_jsonable(report), indent=2)


def write_report(report: dict, out: TextIO):
    out.write(format_report(report))
    out.write("\n")


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_rows_csv(rows: Iterable[dict], columns: Iterable[str], out: TextIO):
    """CSV with a header row; None becomes an empty cell."""
    columns = list(columns)
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_cell(row.get(c)) for c in columns])
