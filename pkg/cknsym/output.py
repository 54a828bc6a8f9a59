"""
CSV and JSON emission of result records.
"""

import csv
import json
import logging
import math
import sys
from contextlib import contextmanager
from enum import Enum
from pathlib import Path
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, TextIO

import numpy as np

from .cylinder import CylinderField, profile_rows

logger = logging.getLogger(__name__)

FORMATS = ("csv", "json")


def format_value(value: object) -> str:
    """CSV text of one value; floats carry 17 significant digits."""
    if isinstance(value, Enum):
        return str(value.value)
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return "%.17g" % float(value)
    if value is None:
        return ""
    return str(value)


def _json_value(value: object) -> object:
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        # JSON has no non-finite numbers
        return value if math.isfinite(value) else str(value)
    return value


def _columns(records: Sequence[Dict[str, object]]) -> List[str]:
    columns: List[str] = []
    for record in records:
        for key in record:
            if key not in columns:
                columns.append(key)
    return columns


def write_records(records: Iterable[Dict[str, object]], stream: TextIO, fmt: str = "csv",
                  columns: Optional[Sequence[str]] = None):
    """
    Write records as CSV (header plus one row each) or as one JSON object per line.

    Args:
        records: Flat dicts
        stream: Destination
        fmt: ``csv`` or ``json``
        columns: Column order (defaults to first appearance)
    """
    records = list(records)
    if fmt == "json":
        for record in records:
            stream.write(json.dumps({k: _json_value(v) for k, v in record.items()}) + "\n")
        return
    if fmt != "csv":
        raise ValueError(f"unknown output format '{fmt}'")

    columns = list(columns) if columns is not None else _columns(records)
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(columns)
    for record in records:
        writer.writerow([format_value(record.get(column, math.nan)) for column in columns])


@contextmanager
def open_output(path: Optional[str]) -> Iterator[TextIO]:
    """Yield stdout for ``None`` or ``-``, otherwise the file opened for writing."""
    if path in (None, "-"):
        yield sys.stdout
        return
    target = Path(path)
    with open(target, "w", newline="") as f:
        yield f
    logger.info(f"Wrote {target}")


def write_profile(field: CylinderField, path: str):
    """Export a field as CSV with columns s, phi, w."""
    columns = profile_rows(field)
    records = [dict(zip(columns, row)) for row in zip(*columns.values())]
    with open_output(path) as stream:
        write_records(records, stream, "csv", columns=list(columns))
