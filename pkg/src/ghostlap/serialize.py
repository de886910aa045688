"""CSV/JSON writers with deterministic float formatting.

Floats are written in Python's shortest round-trip form, CSV uses ',' and LF
line endings, and infinities are spelled ``"inf"``.
"""
from __future__ import annotations

import csv
import io
import json
import math

import numpy as np


def clean(obj):
    """Recursively convert numpy scalars/arrays and non-finite floats to JSON-safe values."""
    if isinstance(obj, dict):
        return {str(k): clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [clean(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [clean(v) for v in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        value = float(obj)
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        if math.isnan(value):
            return "nan"
        return value
    return obj


def dumps_json(obj) -> str:
    return json.dumps(clean(obj), indent=2, ensure_ascii=False) + "\n"


def fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return repr(value)
    return str(value)


def dumps_csv(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt(v) for v in row])
    return buf.getvalue()


def system_triplets(sys) -> list[tuple]:
    """Nonzero entries (row, col, value), row-major, 0-based."""
    rows, cols = np.nonzero(sys.matrix)
    return [(int(r), int(c), float(sys.matrix[r, c])) for r, c in zip(rows, cols)]


def system_dict(sys) -> dict:
    return {"metadata": sys.metadata(), "matrix": sys.matrix, "rhs": sys.rhs}
