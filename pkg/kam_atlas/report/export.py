from __future__ import annotations
import csv
import io
import json
from pathlib import Path
from typing import Optional, Sequence
import numpy as np


def _plain(value):
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, np.ndarray):
        return [_plain(v) for v in value.tolist()]
    if isinstance(value, (np.bool_,)):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, Path):
        return value.as_posix()

    return value


def json_text(data) -> str:
    return json.dumps(_plain(data), indent=2, sort_keys=True, allow_nan=True) + "\n"


def csv_text(rows: Sequence[dict], columns: Optional[Sequence[str]] = None) -> str:
    if columns is None:
        columns = []

        for row in rows:
            columns.extend(key for key in row if key not in columns)

    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=list(columns), lineterminator="\n", restval="")
    writer.writeheader()

    for row in rows:
        writer.writerow({key: repr(value) if isinstance(value, float) else value for key, value in _plain(row).items()})

    return buffer.getvalue()


def write_json(path: Path, data) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json_text(data))

    return path


def write_csv(path: Path, rows: Sequence[dict], columns: Optional[Sequence[str]] = None) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(csv_text(rows, columns))

    return path


def write_bytes(path: Path, data: bytes) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(data)

    return path


def provenance(value, operation: str, tolerance: Optional[float] = None) -> dict:
    return {"value": _plain(value), "operation": operation, "tolerance": tolerance}
