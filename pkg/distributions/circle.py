"""One-parameter circle families X(t) = c e_a + s e_b with half-angle rational parametrization."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from distributions.distribution import Distribution
from liealg.curvature import connection_coefficients
from ratmath import linalg
from ratmath.poly import Poly1, RationalFunction
from utils.errors import ValidationError

_ONE_PLUS_T2 = Poly1((1, 0, 1))
COS = RationalFunction(Poly1((1, 0, -1)), _ONE_PLUS_T2)
SIN = RationalFunction(Poly1((0, 2)), _ONE_PLUS_T2)
_ZERO = RationalFunction(0)


@dataclass(frozen=True)
class CircleFamily:
    """X(t) = cos·e_a + sin·e_b and Y(t) = −sin·e_a + cos·e_b, cos = (1−t²)/(1+t²), sin = 2t/(1+t²).

    t → ∞ is the antipode (cos, sin) = (−1, 0).
    """

    dim: int
    a: int
    b: int

    def __post_init__(self):
        if self.a == self.b or not (0 <= self.a < self.dim and 0 <= self.b < self.dim):
            raise ValidationError(f"Degenerate circle plane (e{self.a}, e{self.b}) in dimension {self.dim}")

    def vector(self, role):
        """Rational-function coefficients of X, Y or the constant frame vector e_k."""
        coeffs = [_ZERO] * self.dim
        if role == "X":
            coeffs[self.a], coeffs[self.b] = COS, SIN
        elif role == "Y":
            coeffs[self.a], coeffs[self.b] = SIN * RationalFunction(-1), COS
        elif isinstance(role, int) and 0 <= role < self.dim:
            coeffs[role] = RationalFunction(1)
        else:
            raise ValidationError(f"Unknown circle frame role {role!r}")
        return coeffs

    def value(self, role, t):
        """Exact vector of a frame role at a rational t, or at the antipode when t is None."""
        if role == "X":
            c, s = (Fraction(-1), Fraction(0)) if t is None else (COS(Fraction(t)), SIN(Fraction(t)))
            return tuple(c if i == self.a else s if i == self.b else Fraction(0) for i in range(self.dim))
        if role == "Y":
            c, s = (Fraction(-1), Fraction(0)) if t is None else (COS(Fraction(t)), SIN(Fraction(t)))
            return tuple(-s if i == self.a else c if i == self.b else Fraction(0) for i in range(self.dim))
        return linalg.basis_vector(self.dim, role)

    def distribution_at(self, t=None):
        """The constant-coefficient distribution X(t)^⊥ with tangent frame (Y(t), remaining e_k)."""
        others = tuple(linalg.basis_vector(self.dim, k) for k in range(self.dim) if k not in (self.a, self.b))
        return Distribution((self.value("Y", t),) + others, (self.value("X", t),), f"X({t})^⊥")


def circle_obstruction(L, family, U, V, T):
    """g(∇_U V, T) along the family as an exact rational function of t.

    U, V and T are each "X", "Y" or a frame index. Coefficients are treated as
    constants along the frame, so no derivative of the angle enters.
    """
    if L.dim != family.dim:
        raise ValidationError("Circle family and algebra differ in dimension")
    nb = connection_coefficients(L)
    u, v, w = family.vector(U), family.vector(V), family.vector(T)
    total = _ZERO
    n = L.dim
    for i in range(n):
        if u[i] == _ZERO:
            continue
        for j in range(n):
            if v[j] == _ZERO:
                continue
            uv = u[i] * v[j]
            for k in range(n):
                if nb[i][j][k] != 0 and w[k] != _ZERO:
                    total = total + uv * w[k] * RationalFunction(nb[i][j][k])
    return total


def constant_entry(L, family, U, V, T, t=None):
    """g(∇_U V, T) with the frame roles frozen at a rational t (or the antipode when t is None)."""
    u, v, w = (family.value(role, t) for role in (U, V, T))
    nb = connection_coefficients(L)
    n = L.dim
    return sum(
        (u[i] * v[j] * w[k] * nb[i][j][k] for i in range(n) for j in range(n) for k in range(n)),
        Fraction(0),
    )


@dataclass(frozen=True)
class AntipodeCheck:
    value: Fraction
    limit: Fraction | None
    agrees: bool


def antipode_check(L, family, U, V, T):
    """Compare the t → ∞ limit of the obstruction with the value at (cos, sin) = (−1, 0)."""
    limit = circle_obstruction(L, family, U, V, T).limit_at_infinity()
    value = constant_entry(L, family, U, V, T, None)
    return AntipodeCheck(value, limit, limit == value)
