"""Reading and writing exact matrices.

Text format: one row per line, entries separated by whitespace, each entry an
optionally signed integer or ``p/q``.  Blank lines and ``#`` comments are
ignored.  A JSON document ``{"rows": r, "cols": c, "entries": [...]}`` with
row-major string entries is accepted as well.
"""

from __future__ import annotations

import json
import re
import sys
from fractions import Fraction

from .core import Matrix, Vector, format_scalar

_ENTRY = re.compile(r"[+-]?\d+(/\d+)?\Z")


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


def _entry(tok: str, line: int, col: int) -> Fraction:
    if not _ENTRY.match(tok):
        raise ParseError(f"bad entry {tok!r}", line, col)
    if "/" in tok and int(tok.split("/")[1]) == 0:
        raise ParseError(f"zero denominator in {tok!r}", line, col)
    return Fraction(tok)


def parse_text(text: str) -> Matrix:
    rows: list[list[Fraction]] = []
    first_line = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        if not body.strip():
            continue
        row = []
        for m in re.finditer(r"\S+", body):
            row.append(_entry(m.group(), lineno, m.start() + 1))
        if rows and len(row) != len(rows[0]):
            raise ParseError(
                f"row has {len(row)} entries, expected {len(rows[0])} (as on line {first_line})",
                lineno,
                1,
            )
        if not rows:
            first_line = lineno
        rows.append(row)
    if not rows:
        raise ParseError("no matrix rows found", 1, 1)
    return Matrix(rows)


def parse_json(text: str) -> Matrix:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, e.lineno, e.colno) from None
    if not isinstance(doc, dict):
        raise ParseError("expected a JSON object", 1, 1)
    if "entries" not in doc and "matrix" in doc:
        doc = doc["matrix"]
    try:
        r, c, entries = int(doc["rows"]), int(doc["cols"]), doc["entries"]
    except (KeyError, TypeError, ValueError):
        raise ParseError("need fields rows, cols, entries", 1, 1) from None
    if len(entries) != r * c:
        raise ParseError(f"{len(entries)} entries for a {r}x{c} matrix", 1, 1)
    vals = []
    for k, e in enumerate(entries):
        vals.append(_entry(str(e).strip(), 1, k + 1))
    return Matrix([vals[i * c:(i + 1) * c] for i in range(r)])


def parse_matrix(text: str) -> Matrix:
    if text.lstrip().startswith("{"):
        return parse_json(text)
    return parse_text(text)


def read_matrix(path: str) -> Matrix:
    if path == "-":
        return parse_matrix(sys.stdin.read())
    with open(path, encoding="utf-8") as fh:
        return parse_matrix(fh.read())


def matrix_to_text(m: Matrix) -> str:
    return str(m) + "\n"


def matrix_to_dict(m: Matrix) -> dict:
    return {"rows": m.rows, "cols": m.cols, "entries": [format_scalar(v) for v in m.entries]}


def vector_to_list(v: Vector) -> list[str]:
    return [format_scalar(x) for x in v]
