import re
from fractions import Fraction

import sympy

from utils.errors import DecimalLiteralError, ValidationError

_RATIONAL = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")
_DECIMAL = re.compile(r"^\s*[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?\s*$")


def parse_rational(value, field="value"):
    """Parse an exact rational from a "p/q" or "p" string, an int or a Fraction.

    Args:
    ----
        value: The literal to parse.
        field (str): Location used in error messages.

    Returns:
    -------
        Fraction: The value in lowest terms.

    """
    if isinstance(value, bool):
        raise ValidationError(f"{field}: expected a rational, got {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        raise DecimalLiteralError(f"{field}: {value!r}: decimals forbidden; write {decimal_hint(repr(value))}")
    if not isinstance(value, str):
        raise ValidationError(f"{field}: expected a rational string, got {type(value).__name__}")

    match = _RATIONAL.match(value)
    if match:
        numerator, denominator = match.groups()
        if denominator is not None and int(denominator) == 0:
            raise ValidationError(f"{field}: zero denominator in {value!r}")
        return Fraction(int(numerator), int(denominator or 1))
    if _DECIMAL.match(value):
        raise DecimalLiteralError(f"{field}: {value!r}: decimals forbidden; write {decimal_hint(value)}")
    raise ValidationError(f"{field}: {value!r} is not a rational literal (use \"p/q\" or \"p\")")


def decimal_hint(text):
    try:
        return format_rational(Fraction(text.strip()))
    except (ValueError, ZeroDivisionError):
        return "p/q"


def format_rational(q):
    """Render a rational as "p/q", or "p" when the denominator is 1."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_vector(values, field="vector"):
    if not isinstance(values, (list, tuple)):
        raise ValidationError(f"{field}: expected a list of rationals")
    return tuple(parse_rational(v, f"{field}[{i}]") for i, v in enumerate(values))


def to_sympy(q):
    """Exact sympy Rational for an int or Fraction."""
    q = Fraction(q)
    return sympy.Rational(q.numerator, q.denominator)


def from_sympy(x):
    """Fraction for a sympy rational number; anything else is rejected."""
    x = sympy.sympify(x)
    if not x.is_Rational:
        raise ValidationError(f"Expected an exact rational, got {x}")
    return Fraction(int(x.p), int(x.q))
