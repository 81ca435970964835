"""Reading and writing code files, skeleton files and rank-code files.

Subspace code file (JSON)::

    {"field": "GF(2^6)/1,1,0,0,0,0,1", "n": 6, "metric": "injection",
     "subspaces": [["100000", "010000"], ...]}

Rows are strings of base-q digits (comma-separated digits when q > 10),
subspaces are listed in canonical order.  An optional "min_distance"
records the distance a construction claims.  Rank-code files hold a list of
basis matrices in the same row-string layout plus a "diagram" field.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import ParseError, QSpaceError
from .gf import FieldSpec, parse_descriptor
from .rank_metric import FDRMCode, FerrersDiagram, Matrix, RankCode
from .subspace import METRICS, Subspace, SubspaceCode, rref

@dataclass
class ReadResult:
    """A parsed code plus notes about anything that had to be normalized."""

    code: SubspaceCode
    warnings: list[str] = field(default_factory=list)

    @property
    def canonicalized(self) -> bool:
        return bool(self.warnings)


def row_text(row: Sequence[int], q: int) -> str:
    if q > 10:
        return ",".join(str(x) for x in row)
    return "".join(str(x) for x in row)


def _parse_row(text: object, F: FieldSpec, n: int | None, where: str) -> tuple[int, ...]:
    if not isinstance(text, str):
        raise ParseError(f"{where}: expected a row string, got {type(text).__name__}")
    s = text.strip()
    try:
        digits = [int(c) for c in s.split(",")] if F.q > 10 else [int(c) for c in s]
    except ValueError:
        raise ParseError(f"{where}: row {text!r} has a non-digit character") from None
    for c in digits:
        if not 0 <= c < F.q:
            raise ParseError(f"{where}: digit {c} is not an element of GF({F.q})")
    if n is not None and len(digits) != n:
        raise ParseError(f"{where}: row {text!r} has length {len(digits)}, expected {n}")
    return tuple(digits)


def code_to_json(C: SubspaceCode) -> dict:
    q = C.field.q
    doc = {"field": C.field.descriptor, "n": C.n, "metric": C.metric}
    if C.claimed_min_distance is not None:
        doc["min_distance"] = C.claimed_min_distance
    doc["subspaces"] = [[row_text(r, q) for r in X.rows] for X in C.words]
    return doc


def write_code(C: SubspaceCode) -> str:
    """Canonical JSON text; identical codes give identical bytes."""
    doc = code_to_json(C)
    lines = ["{",
             f'  "field": {json.dumps(doc["field"])},',
             f'  "n": {doc["n"]},',
             f'  "metric": {json.dumps(doc["metric"])},']
    if "min_distance" in doc:
        lines.append(f'  "min_distance": {doc["min_distance"]},')
    lines.append('  "subspaces": [')
    for i, rows in enumerate(doc["subspaces"]):
        sep = "," if i + 1 < len(doc["subspaces"]) else ""
        lines.append(f"    {json.dumps(rows)}{sep}")
    lines.append("  ]")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _load_json(text: str) -> object:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def code_from_json(doc: object) -> ReadResult:
    if not isinstance(doc, dict):
        raise ParseError("code file: top level must be a JSON object")
    for key in ("field", "n", "subspaces"):
        if key not in doc:
            raise ParseError(f"code file: missing field {key!r}")
    try:
        F = parse_descriptor(str(doc["field"]))
    except QSpaceError as exc:
        raise ParseError(f"field 'field': {exc}") from None
    n = doc["n"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise ParseError(f"field 'n': expected a nonnegative integer, got {n!r}")
    metric = doc.get("metric", "subspace")
    if metric not in METRICS:
        raise ParseError(f"field 'metric': {metric!r} is not one of {', '.join(METRICS)}")
    claimed = doc.get("min_distance")
    if claimed is not None and (not isinstance(claimed, int) or isinstance(claimed, bool) or claimed < 0):
        raise ParseError(f"field 'min_distance': expected a nonnegative integer, got {claimed!r}")
    subs = doc["subspaces"]
    if not isinstance(subs, list):
        raise ParseError("field 'subspaces': expected a list")
    warnings: list[str] = []
    words = []
    for i, rows in enumerate(subs):
        if not isinstance(rows, list):
            raise ParseError(f"subspaces[{i}]: expected a list of row strings")
        matrix = [_parse_row(r, F, n, f"subspaces[{i}][{j}]") for j, r in enumerate(rows)]
        canon, rk = rref(matrix, F, n)
        if tuple(matrix) != canon:
            warnings.append(f"subspaces[{i}]: rows were not in reduced row echelon form; canonicalized"
                            + ("" if rk == len(matrix) else f" (rank {rk} < {len(matrix)} rows)"))
        words.append(Subspace(F, n, canon))
    if len(set(words)) != len(words):
        warnings.append("duplicate subspaces removed")
    if words != sorted(set(words), key=Subspace.order_key):
        if len(set(words)) == len(words):
            warnings.append("subspaces reordered into canonical order")
    try:
        code = SubspaceCode(F, n, tuple(words), metric, claimed)
    except QSpaceError as exc:
        raise ParseError(f"code file: {exc}") from None
    return ReadResult(code, warnings)


def read_code(text: str) -> ReadResult:
    return code_from_json(_load_json(text))


# -- skeleton files ---------------------------------------------------------------

def read_skeleton_words(text: str) -> list[str]:
    """Binary words, one per line; blank lines and '#' comments are skipped."""
    words = []
    length = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if any(c not in "01" for c in line):
            raise ParseError(f"line {lineno}: {line!r} is not a binary word")
        if length is not None and len(line) != length:
            raise ParseError(f"line {lineno}: word length {len(line)} differs from {length}")
        length = len(line)
        words.append(line)
    if not words:
        raise ParseError("skeleton file holds no words")
    return words


def write_skeleton_words(words: Iterable[str]) -> str:
    return "".join(w + "\n" for w in words)


# -- rank-metric codes ------------------------------------------------------------

def rank_code_to_json(C: RankCode | FDRMCode) -> dict:
    if isinstance(C, FDRMCode):
        diagram = str(C.diagram)
        extra = {"bound": C.bound, "method": C.method}
        C = C.as_rank_code()
    else:
        diagram = str(FerrersDiagram.rectangle(C.k, C.l))
        extra = {}
    q = C.field.q
    doc = {"field": C.field.descriptor, "k": C.k, "l": C.l, "delta": C.delta, "diagram": diagram,
           "basis": [[row_text(r, q) for r in A] for A in C.basis]}
    doc.update(extra)
    return doc


def write_rank_code(C: RankCode | FDRMCode) -> str:
    return json.dumps(rank_code_to_json(C), indent=2) + "\n"


def read_rank_code(text: str) -> tuple[RankCode, FerrersDiagram]:
    doc = _load_json(text)
    if not isinstance(doc, dict):
        raise ParseError("rank code file: top level must be a JSON object")
    for key in ("field", "k", "l", "delta", "basis"):
        if key not in doc:
            raise ParseError(f"rank code file: missing field {key!r}")
    try:
        F = parse_descriptor(str(doc["field"]))
    except QSpaceError as exc:
        raise ParseError(f"field 'field': {exc}") from None
    k, l, delta = doc["k"], doc["l"], doc["delta"]
    for name, v in (("k", k), ("l", l), ("delta", delta)):
        if not isinstance(v, int) or isinstance(v, bool) or v < 0:
            raise ParseError(f"field {name!r}: expected a nonnegative integer, got {v!r}")
    basis: list[Matrix] = []
    for i, A in enumerate(doc["basis"]):
        if not isinstance(A, list) or len(A) != k:
            raise ParseError(f"basis[{i}]: expected {k} row strings")
        basis.append(tuple(_parse_row(r, F, l, f"basis[{i}][{j}]") for j, r in enumerate(A)))
    diagram = FerrersDiagram.parse(str(doc.get("diagram", ""))) if doc.get("diagram") else \
        FerrersDiagram.rectangle(k, l)
    return RankCode(F, k, l, tuple(basis), delta), diagram


# -- tables -----------------------------------------------------------------------

def write_csv(header: Sequence[str], rows: Iterable[Sequence[object]]) -> str:
    import csv
    import io

    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow(["" if x is None else x for x in r])
    return buf.getvalue()
