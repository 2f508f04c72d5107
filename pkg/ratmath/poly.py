"""Univariate polynomials and rational functions in t over Q, backed by sympy.Poly."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import sympy

from ratmath.rational import from_sympy, to_sympy
from utils.errors import ValidationError

T = sympy.Symbol("t")


def _qq_poly(coeffs):
    """sympy.Poly over QQ from coefficients listed lowest degree first."""
    highest_first = [to_sympy(c) for c in reversed(list(coeffs))] or [sympy.Integer(0)]
    return sympy.Poly.from_list(highest_first, T, domain=sympy.QQ)


@dataclass(frozen=True, init=False)
class Poly1:
    """Univariate polynomial over Q.

    ``coeffs`` lists coefficients lowest degree first; the zero polynomial has none.
    """

    poly: sympy.Poly

    def __init__(self, coeffs=()):
        poly = coeffs if isinstance(coeffs, sympy.Poly) else _qq_poly(coeffs)
        object.__setattr__(self, "poly", poly.set_domain(sympy.QQ))

    @classmethod
    def constant(cls, c):
        return cls((c,))

    @classmethod
    def t(cls):
        return cls((0, 1))

    @property
    def coeffs(self):
        if self.poly.is_zero:
            return ()
        return tuple(from_sympy(c) for c in reversed(self.poly.all_coeffs()))

    @property
    def degree(self):
        return -1 if self.poly.is_zero else int(self.poly.degree())

    def is_zero(self):
        return self.poly.is_zero

    def leading(self):
        return from_sympy(self.poly.LC())

    def __call__(self, t):
        if isinstance(t, (int, Fraction)):
            return from_sympy(self.poly.eval(to_sympy(t)))
        return float(self.poly.as_expr().subs(T, t))

    def __add__(self, other):
        return Poly1(self.poly + _lift(other).poly)

    __radd__ = __add__

    def __neg__(self):
        return Poly1(-self.poly)

    def __sub__(self, other):
        return Poly1(self.poly - _lift(other).poly)

    def __rsub__(self, other):
        return _lift(other) - self

    def __mul__(self, other):
        return Poly1(self.poly * _lift(other).poly)

    __rmul__ = __mul__

    def __pow__(self, k):
        return Poly1(self.poly ** k)

    def divmod(self, other):
        other = _lift(other)
        if other.is_zero():
            raise ZeroDivisionError("Polynomial division by zero")
        quotient, remainder = self.poly.div(other.poly)
        return Poly1(quotient), Poly1(remainder)

    def monic(self):
        return self if self.is_zero() else Poly1(self.poly.monic())

    def gcd(self, other):
        """Monic greatest common divisor."""
        return Poly1(self.poly.gcd(_lift(other).poly)).monic()

    def __str__(self):
        if self.is_zero():
            return "0"
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            power = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            coeff = str(c) if (k == 0 or abs(c) != 1) else ("-" if c < 0 else "")
            terms.append(f"{coeff}{'*' if coeff not in ('', '-') and power else ''}{power}")
        return " + ".join(terms).replace("+ -", "- ")


def _lift(value):
    if isinstance(value, Poly1):
        return value
    if isinstance(value, (int, Fraction)):
        return Poly1.constant(value)
    raise TypeError(f"Cannot combine Poly1 with {type(value).__name__}")


@dataclass(frozen=True, init=False)
class RationalFunction:
    """Reduced quotient num/den of Poly1 values with a monic denominator."""

    num: Poly1
    den: Poly1

    def __init__(self, num, den=None):
        num = _lift(num)
        den = Poly1.constant(1) if den is None else _lift(den)
        if den.is_zero():
            raise ValidationError("Rational function with zero denominator")
        common = num.poly.gcd(den.poly)
        p, q = num.poly.quo(common), den.poly.quo(common)
        lead = q.LC()
        object.__setattr__(self, "num", Poly1(p.quo_ground(lead)))
        object.__setattr__(self, "den", Poly1(q.monic()))

    def as_expr(self):
        return self.num.poly.as_expr() / self.den.poly.as_expr()

    def __call__(self, t):
        return self.num(t) / self.den(t)

    def __add__(self, other):
        other = other if isinstance(other, RationalFunction) else RationalFunction(other)
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    def __mul__(self, other):
        other = other if isinstance(other, RationalFunction) else RationalFunction(other)
        return RationalFunction(self.num * other.num, self.den * other.den)

    def is_constant(self):
        return self.num.degree <= 0 and self.den.degree == 0

    def constant_value(self):
        if not self.is_constant():
            raise ValidationError("Rational function is not constant")
        return self.num.coeffs[0] if self.num.coeffs else Fraction(0)

    def limit_at_infinity(self):
        """Limit as t → ∞, or None when unbounded."""
        limit = sympy.limit(self.as_expr(), T, sympy.oo)
        return from_sympy(limit) if limit.is_finite else None

    def __str__(self):
        if self.den.degree == 0:
            return str(self.num)
        return f"({self.num}) / ({self.den})"
