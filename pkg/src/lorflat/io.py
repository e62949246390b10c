"""JSON file formats.

Algebra files::

    {"dim": n, "basis": [names], "metric": [[rationals]], "brackets": {"i,j": [coeffs]}}

with 0-based indices, ``i < j`` only and omitted pairs zero.  Rationals are
integers or strings ``"p"`` / ``"p/q"``; floats and decimal strings are
rejected.
"""

from __future__ import annotations

import json
from typing import Any

from .algebra import MetricLieAlgebra
from .linalg import LinalgError, Matrix, fmt_rational, rational
from .report import CheckReport


class ParseError(ValueError):
    """Malformed input; the message starts with the offending location."""

    def __init__(self, where: str, message: str):
        super().__init__(f"{where}: {message}")
        self.where = where


def load_json(data: bytes | str) -> Any:
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"byte {exc.start}", "invalid UTF-8") from None
    try:
        return json.loads(data, parse_float=_no_float)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno} column {exc.colno}", exc.msg) from None


def _no_float(text: str):
    raise ParseError("number " + text, "floating-point literal; write an exact rational such as \"1/2\"")


def _q(value, where: str):
    try:
        return rational(value)
    except LinalgError as exc:
        raise ParseError(where, str(exc)) from None


def algebra_from_dict(d: Any) -> MetricLieAlgebra:
    if not isinstance(d, dict):
        raise ParseError("$", "expected an object")
    n = d.get("dim")
    if isinstance(n, bool) or not isinstance(n, int) or n < 0:
        raise ParseError("$.dim", "expected a nonnegative integer")
    basis = d.get("basis", [])
    if not isinstance(basis, list) or (basis and len(basis) != n) or not all(isinstance(b, str) for b in basis):
        raise ParseError("$.basis", f"expected {n} names")
    metric = d.get("metric")
    if not isinstance(metric, list) or len(metric) != n:
        raise ParseError("$.metric", f"expected {n} rows")
    rows = []
    for i, row in enumerate(metric):
        if not isinstance(row, list) or len(row) != n:
            raise ParseError(f"$.metric[{i}]", f"expected {n} entries")
        rows.append([_q(x, f"$.metric[{i}][{j}]") for j, x in enumerate(row)])
    for i in range(n):
        for j in range(i + 1, n):
            if rows[i][j] != rows[j][i]:
                raise ParseError(f"$.metric[{i}][{j}]", "metric is not symmetric")
    brackets = d.get("brackets", {})
    if not isinstance(brackets, dict):
        raise ParseError("$.brackets", "expected an object")
    table = {}
    for key, val in brackets.items():
        where = f"$.brackets[{key!r}]"
        try:
            i, j = (int(t) for t in key.split(","))
        except ValueError:
            raise ParseError(where, "key must be 'i,j'") from None
        if not (0 <= i < j < n):
            raise ParseError(where, f"need 0 <= i < j < {n}")
        if not isinstance(val, list) or len(val) != n:
            raise ParseError(where, f"expected {n} coefficients")
        table[(i, j)] = tuple(_q(x, f"{where}[{k}]") for k, x in enumerate(val))
    G = Matrix(rows) if n else Matrix.zeros(0)
    return MetricLieAlgebra.from_brackets(n, table, G, basis)


def parse_algebra(data: bytes | str) -> MetricLieAlgebra:
    return algebra_from_dict(load_json(data))


def algebra_to_dict(alg: MetricLieAlgebra) -> dict:
    n = alg.dim
    br = {}
    for i in range(n):
        for j in range(i + 1, n):
            v = alg.brackets[i][j]
            if any(v):
                br[f"{i},{j}"] = [fmt_rational(a) for a in v]
    return {
        "dim": n,
        "basis": list(alg.basis),
        "metric": [[fmt_rational(a) for a in r] for r in alg.metric],
        "brackets": br,
    }


def dumps(obj: Any) -> bytes:
    return (json.dumps(obj, indent=2, ensure_ascii=False) + "\n").encode("utf-8")


def emit_algebra(alg: MetricLieAlgebra) -> bytes:
    return dumps(algebra_to_dict(alg))


def emit_report(report: CheckReport, fmt: str = "text") -> bytes:
    if fmt == "json":
        return dumps(report.to_dict())
    if fmt == "text":
        return report.to_text().encode("utf-8")
    raise ValueError(f"unknown format {fmt!r}")
