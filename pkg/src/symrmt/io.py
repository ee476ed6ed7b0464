"""CSV / JSONL tables with a schema-version line and round-trip-safe floats."""

import csv
import io as _io
import json

SCHEMA_VERSION = 1
SCHEMA_LINE = f"# schema-version: {SCHEMA_VERSION}"


def fmt(value):
    """17 significant digits for floats, str() for everything else."""
    if isinstance(value, float):
        return format(value, ".17g")
    if hasattr(value, "dtype") and value.dtype.kind == "f":
        return format(float(value), ".17g")
    return str(value)


def _jsonable(value):
    if hasattr(value, "item"):
        return value.item()
    return value


def write_table(stream, columns, rows, fmt_name="csv"):
    """Write rows (sequences aligned with ``columns``) as csv or jsonl."""
    if fmt_name == "csv":
        stream.write(SCHEMA_LINE + "\n")
        w = csv.writer(stream, lineterminator="\n")
        w.writerow(columns)
        for row in rows:
            w.writerow([fmt(v) for v in row])
    elif fmt_name == "jsonl":
        for row in rows:
            stream.write(json.dumps({c: _jsonable(v) for c, v in zip(columns, row)}) + "\n")
    else:
        raise ValueError("format must be csv or jsonl")


def table_to_string(columns, rows, fmt_name="csv"):
    buf = _io.StringIO()
    write_table(buf, columns, rows, fmt_name)
    return buf.getvalue()


def _number(text):
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        return text


def read_table(stream):
    """Inverse of :func:`write_table`; returns (columns, rows)."""
    text = stream.read()
    lines = text.splitlines()
    if lines and lines[0].startswith("{"):
        rows = [json.loads(s) for s in lines if s.strip()]
        cols = list(rows[0]) if rows else []
        return cols, [[r[c] for c in cols] for r in rows]
    if not lines or lines[0].strip() != SCHEMA_LINE:
        raise ValueError(f"missing '{SCHEMA_LINE}' line")
    reader = csv.reader(lines[1:])
    cols = next(reader)
    return cols, [[_number(v) for v in row] for row in reader]


def load_table(path):
    with open(path, newline="") as fh:
        return read_table(fh)
