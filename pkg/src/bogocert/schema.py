"""JSON input parsing and canonical output.

Curve documents::

    {"base_field": {"min_poly": [c0, ..., cn]},
     "a_invariants": [a1, a2, a3, a4, a6]}        # or "j": element

Each element is a list of n coordinates in the power basis of the field
generator; a coordinate is an int, a decimal or "num/den" string, or a
[num, den] pair.  Over Q (n = 1) a bare coordinate is accepted.

Field documents (``--L``)::

    {"min_poly": [...], "galois": true, "galois_bound": m}
"""

from __future__ import annotations

import json
from fractions import Fraction

from .errors import InvalidArgument, SchemaError
from .numfield import FieldElement, NumberFieldOrder

SAFE_INT = 2**53


def parse_rational(x, where="value") -> Fraction:
    try:
        if isinstance(x, bool):
            raise TypeError
        if isinstance(x, int):
            return Fraction(x)
        if isinstance(x, str):
            return Fraction(x.strip())
        if isinstance(x, (list, tuple)) and len(x) == 2:
            num, den = (int(v) for v in x)
            if den == 0:
                raise ZeroDivisionError
            return Fraction(num, den)
    except (TypeError, ValueError, ZeroDivisionError):
        pass
    raise SchemaError(f"cannot read {x!r} as a rational number", field=where)


def parse_int(x, where="value") -> int:
    r = parse_rational(x, where)
    if r.denominator != 1:
        raise SchemaError(f"expected an integer, got {x!r}", field=where)
    return int(r)


def parse_order(doc, where="base_field") -> NumberFieldOrder:
    if not isinstance(doc, dict) or "min_poly" not in doc:
        raise SchemaError("expected an object with a 'min_poly' list", field=where)
    coeffs = doc["min_poly"]
    if not isinstance(coeffs, list) or len(coeffs) < 2:
        raise SchemaError("min_poly must list at least two coefficients", field=f"{where}.min_poly")
    ints = [parse_int(c, f"{where}.min_poly") for c in coeffs]
    try:
        return NumberFieldOrder(tuple(ints))
    except InvalidArgument as exc:
        raise SchemaError(str(exc), field=f"{where}.min_poly") from exc


def parse_element(order: NumberFieldOrder, x, where="element") -> FieldElement:
    n = order.degree
    if n == 1 and not (isinstance(x, list) and len(x) == 1):
        return order.rational(parse_rational(x, where))
    if not isinstance(x, list) or len(x) != n:
        raise SchemaError(f"expected {n} coordinates", field=where)
    return order.element([parse_rational(c, f"{where}[{i}]") for i, c in enumerate(x)])


def element_coords(a: FieldElement) -> list:
    return [_rat(c) for c in a.coords]


def _rat(c: Fraction):
    if c.denominator == 1:
        return big_int(c.numerator)
    return [big_int(c.numerator), big_int(c.denominator)]


def big_int(n: int):
    """Integers beyond 2^53 travel as decimal strings."""
    return str(n) if abs(n) > SAFE_INT else n


def _jsonable(obj):
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, int):
        return big_int(obj)
    if isinstance(obj, Fraction):
        return _rat(obj)
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = sorted(obj) if isinstance(obj, (set, frozenset)) else obj
        return [_jsonable(v) for v in items]
    return obj


def dumps(obj) -> str:
    return json.dumps(_jsonable(obj), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def load_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}", field=str(path)) from exc
