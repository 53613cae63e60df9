"""Reading and writing matrix and polygon files.

Matrix files
    CSV: ``n`` lines of ``x,y``.  JSON: ``{"n": int, "rows": [[x, y], ...]}``.
Polygon files
    CSV: ``n`` lines of ``x,y``.  JSON: ``{"vectors": [[x, y], ...]}``.

The format is picked from the file extension unless given explicitly.
"""

import csv
import io
import json
from pathlib import Path

__all__ = [
    "ParseError",
    "detect_format",
    "read_pairs",
    "write_matrix",
    "write_polygon",
    "format_float",
]


class ParseError(ValueError):
    pass


def format_float(x):
    return format(float(x), ".17g")


def detect_format(path, fmt=None):
    if fmt:
        fmt = fmt.lower()
        if fmt not in ("csv", "json"):
            raise ParseError(f"unknown format {fmt!r}")
        return fmt
    suffix = Path(path).suffix.lower()
    return "json" if suffix == ".json" else "csv"


def _pairs_from_csv(text):
    out = []
    for lineno, rec in enumerate(csv.reader(io.StringIO(text)), start=1):
        if not rec or all(not f.strip() for f in rec):
            continue
        if len(rec) != 2:
            raise ParseError(f"line {lineno}: expected 2 fields, got {len(rec)}")
        try:
            out.append((float(rec[0]), float(rec[1])))
        except ValueError as exc:
            raise ParseError(f"line {lineno}: {exc}") from None
    return out


def _pairs_from_json(text, key):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(str(exc)) from None
    if not isinstance(doc, dict) or key not in doc:
        raise ParseError(f"JSON document must be an object with a {key!r} list")
    pairs = doc[key]
    try:
        out = [(float(x), float(y)) for x, y in pairs]
    except (TypeError, ValueError) as exc:
        raise ParseError(f"bad {key!r} entry: {exc}") from None
    if "n" in doc and doc["n"] != len(out):
        raise ParseError(f"n = {doc['n']} but {len(out)} rows given")
    return out


def read_pairs(path, kind="matrix", fmt=None):
    """Read a list of ``(x, y)`` pairs from a matrix or polygon file.

    Raises ``OSError`` on I/O problems and :class:`ParseError` on bad content.
    """
    text = Path(path).read_text(encoding="utf-8")
    if detect_format(path, fmt) == "csv":
        return _pairs_from_csv(text)
    return _pairs_from_json(text, "rows" if kind == "matrix" else "vectors")


def _dump(path, pairs, fmt, key):
    pairs = [(float(x), float(y)) for x, y in pairs]
    if detect_format(path, fmt) == "csv":
        text = "".join(f"{format_float(x)},{format_float(y)}\n" for x, y in pairs)
    else:
        body = ",\n".join(f"    [{format_float(x)}, {format_float(y)}]" for x, y in pairs)
        head = f'{{\n  "n": {len(pairs)},\n' if key == "rows" else "{\n"
        text = f'{head}  "{key}": [\n{body}\n  ]\n}}\n'
    Path(path).write_text(text, encoding="utf-8")


def write_matrix(path, rows, fmt=None):
    _dump(path, rows, fmt, "rows")


def write_polygon(path, vectors, fmt=None):
    _dump(path, vectors, fmt, "vectors")
