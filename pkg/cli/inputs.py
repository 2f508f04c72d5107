"""JSON input documents: metric Lie algebras and conformal Killing parameter tuples."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from ckf.fields import CkField
from liealg.algebra import load
from ratmath.rational import decimal_hint, parse_rational, parse_vector
from utils.errors import DecimalLiteralError, ValidationError
from utils.logging import logger

KINDS = ("lie_algebra", "ckf")


@dataclass(frozen=True)
class InputDoc:
    kind: str
    payload: object
    source: str = ""


def _reject_float(text):
    raise DecimalLiteralError(f"number {text}: decimals forbidden; write {decimal_hint(text)}")


def _require(data, key, where):
    if key not in data:
        raise ValidationError(f"{where}: missing field '{key}'")
    return data[key]


def _parse_index(value, field):
    if isinstance(value, bool) or not isinstance(value, int):
        raise ValidationError(f"{field}: expected an integer index, got {value!r}")
    return value


def parse_lie_algebra(data, skip_jacobi=False):
    dim = _parse_index(_require(data, "dim", "lie_algebra"), "dim")
    brackets = {}
    for position, item in enumerate(_require(data, "brackets", "lie_algebra")):
        where = f"brackets[{position}]"
        if not isinstance(item, dict):
            raise ValidationError(f"{where}: expected an object with 'pair' and 'result'")
        pair = _require(item, "pair", where)
        if not isinstance(pair, list) or len(pair) != 2:
            raise ValidationError(f"{where}.pair: expected [i, j]")
        i, j = (_parse_index(p, f"{where}.pair") for p in pair)
        if not i < j:
            raise ValidationError(f"{where}.pair: only pairs with i < j are allowed, got [{i}, {j}]")
        if (i, j) in brackets:
            raise ValidationError(f"{where}.pair: bracket [{i}, {j}] listed twice")
        result = _require(item, "result", where)
        if not isinstance(result, dict):
            raise ValidationError(f"{where}.result: expected an object {{\"k\": \"p/q\"}}")
        terms = {}
        for k, value in result.items():
            try:
                index = int(k)
            except ValueError:
                raise ValidationError(f"{where}.result: key {k!r} is not an index") from None
            terms[index] = parse_rational(value, f"{where}.result[{k}]")
        brackets[(i, j)] = terms
    return load(dim, brackets, skip_jacobi=skip_jacobi)


def parse_ckf(data):
    dim = _parse_index(_require(data, "dim", "ckf"), "dim")
    alpha = parse_vector(_require(data, "alpha", "ckf"), "alpha")
    c = parse_rational(_require(data, "c", "ckf"), "c")
    rows = _require(data, "B", "ckf")
    if not isinstance(rows, list):
        raise ValidationError("B: expected a list of rows")
    B = tuple(parse_vector(row, f"B[{i}]") for i, row in enumerate(rows))
    gamma = parse_vector(_require(data, "gamma", "ckf"), "gamma")
    if len(alpha) != dim:
        raise ValidationError(f"alpha: expected {dim} entries, got {len(alpha)}")
    return CkField(alpha, c, B, gamma)


def parse_document(text, source="", skip_jacobi=False):
    """Parse a JSON document; decimals are rejected wherever they appear."""
    try:
        data = json.loads(text, parse_float=_reject_float)
    except json.JSONDecodeError as e:
        raise ValidationError(f"{source or '<input>'}:{e.lineno}:{e.colno}: malformed JSON: {e.msg}") from None
    if not isinstance(data, dict):
        raise ValidationError("Top-level JSON value must be an object")
    kind = _require(data, "kind", "document")
    if kind == "lie_algebra":
        payload = parse_lie_algebra(data, skip_jacobi=skip_jacobi)
    elif kind == "ckf":
        payload = parse_ckf(data)
    else:
        raise ValidationError(f"kind: expected one of {KINDS}, got {kind!r}")
    return InputDoc(kind, payload, source)


def parse_input(path, skip_jacobi=False):
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except UnicodeDecodeError as e:
        raise ValidationError(f"{path}: not UTF-8 ({e.reason})") from None
    except OSError as e:
        raise ValidationError(f"{path}: cannot read ({e.strerror})") from None
    doc = parse_document(text, str(path), skip_jacobi=skip_jacobi)
    logger.info(f"Loaded {doc.kind} document from {path}")
    return doc
