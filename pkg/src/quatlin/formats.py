"""Reading and writing quaternionic matrices and vectors.

Two matrix formats are accepted:

* text: a header line ``"n m"`` followed by ``n`` lines of ``m``
  whitespace-separated quaternion literals (``1-2k``, ``0.5i``, ...);
* structured: a JSON document
  ``{"rows": n, "cols": m, "entries": [[w, x, y, z], ...]}`` in row-major
  order.

Writers always emit the structured form.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .errors import ParseError
from .qmatrix import QMatrix, QVector
from .quaternion import Quaternion, format_quaternion, parse_quaternion

__all__ = [
    "parse_matrix",
    "parse_matrix_text",
    "matrix_from_document",
    "matrix_to_document",
    "load_matrix",
    "save_matrix",
    "parse_vector",
    "format_matrix_text",
    "quaternion_to_list",
]


def quaternion_to_list(q: Quaternion) -> list[float]:
    return [q.w, q.x, q.y, q.z]


def parse_matrix_text(text: str) -> QMatrix:
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ParseError("empty matrix file")
    header = lines[0].split()
    try:
        n, m = (int(t) for t in header)
    except ValueError:
        raise ParseError(f"bad header {lines[0]!r}; expected 'rows cols'") from None
    if n <= 0 or m <= 0:
        raise ParseError("matrix dimensions must be positive")
    body = lines[1:]
    if len(body) != n:
        raise ParseError(f"expected {n} rows, found {len(body)}")
    rows = []
    for k, line in enumerate(body):
        tokens = line.split()
        if len(tokens) != m:
            raise ParseError(f"row {k + 1} has {len(tokens)} entries, expected {m}")
        rows.append([parse_quaternion(t).as_tuple() for t in tokens])
    return QMatrix(np.array(rows, dtype=float))


def matrix_from_document(doc) -> QMatrix:
    if not isinstance(doc, dict):
        raise ParseError("structured matrix must be an object")
    try:
        n, m, entries = int(doc["rows"]), int(doc["cols"]), doc["entries"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"structured matrix missing or bad field: {exc}") from None
    if n <= 0 or m <= 0:
        raise ParseError("matrix dimensions must be positive")
    if not isinstance(entries, list) or len(entries) != n * m:
        raise ParseError(f"expected {n * m} entries")
    try:
        arr = np.array(entries, dtype=float)
    except (TypeError, ValueError):
        raise ParseError("entries must be [w, x, y, z] number lists") from None
    if arr.shape != (n * m, 4) or not np.all(np.isfinite(arr)):
        raise ParseError("entries must be finite [w, x, y, z] lists")
    return QMatrix(arr.reshape(n, m, 4))


def matrix_to_document(m: QMatrix) -> dict:
    return {
        "rows": m.rows,
        "cols": m.cols,
        "entries": [[float(c) for c in q] for q in m.data.reshape(-1, 4)],
    }


def parse_matrix(text: str) -> QMatrix:
    """Parse either format, deciding by the first non-blank character."""
    if text.lstrip().startswith("{"):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from None
        return matrix_from_document(doc)
    return parse_matrix_text(text)


def load_matrix(path) -> QMatrix:
    return parse_matrix(Path(path).read_text())


def save_matrix(m: QMatrix, path) -> None:
    Path(path).write_text(json.dumps(matrix_to_document(m)) + "\n")


def format_matrix_text(m: QMatrix) -> str:
    lines = [f"{m.rows} {m.cols}"]
    for row in m.entries():
        lines.append(" ".join(format_quaternion(q) for q in row))
    return "\n".join(lines) + "\n"


def parse_vector(text: str) -> QVector:
    """Comma-separated quaternion literals, e.g. ``"1,i,0"``."""
    parts = [p for p in str(text).split(",")]
    if not parts or any(not p.strip() for p in parts):
        raise ParseError(f"bad vector literal {text!r}")
    return QVector([parse_quaternion(p) for p in parts])
