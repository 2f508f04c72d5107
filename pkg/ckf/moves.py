"""Conformal transformations of R^n and their action on conformal Killing parameters."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import singledispatch

from ckf.fields import CkField, evaluate
from ratmath import linalg
from ratmath.rational import format_rational
from utils.errors import DimensionMismatchError, ValidationError


def _fmt(v):
    return "(" + ", ".join(format_rational(a) for a in v) + ")"


@dataclass(frozen=True)
class Translation:
    """F(x) = x − x0."""

    x0: tuple

    def __post_init__(self):
        object.__setattr__(self, "x0", linalg.vector(self.x0))

    def describe(self):
        return f"translation x0={_fmt(self.x0)}"


@dataclass(frozen=True)
class Dilation:
    """F(x) = x / r."""

    r: Fraction

    def __post_init__(self):
        r = Fraction(self.r)
        if r == 0:
            raise ValidationError("Dilation factor must be nonzero")
        object.__setattr__(self, "r", r)

    def describe(self):
        return f"dilation r={format_rational(self.r)}"


@dataclass(frozen=True)
class Rotation:
    """F(x) = R x for a rational orthogonal R."""

    R: tuple

    def __post_init__(self):
        R = linalg.matrix(self.R)
        if linalg.mat_mul(linalg.transpose(R), R) != linalg.identity(len(R)):
            raise ValidationError("Rotation matrix must satisfy RᵀR = I exactly")
        object.__setattr__(self, "R", R)

    def describe(self):
        return "rotation R=[" + ", ".join(_fmt(row) for row in self.R) + "]"


@dataclass(frozen=True)
class Inversion:
    """F(x) = x / |x|²."""

    def describe(self):
        return "inversion"


@dataclass(frozen=True)
class Scalar:
    """Multiply the weight (and the field) by k."""

    k: Fraction

    def __post_init__(self):
        k = Fraction(self.k)
        if k == 0:
            raise ValidationError("Scalar factor must be nonzero")
        object.__setattr__(self, "k", k)

    def describe(self):
        return f"scalar k={format_rational(self.k)}"


ConformalMove = (Translation, Dilation, Rotation, Inversion, Scalar)


@singledispatch
def _act(move, X):
    raise ValidationError(f"Unknown conformal move {move!r}")


@_act.register
def _(move: Translation, X):
    x0 = move.x0
    if len(x0) != X.dim:
        raise DimensionMismatchError("Translation vector dimension does not match the field")
    ax0 = linalg.dot(X.alpha, x0)
    half_sq = linalg.norm_sq(x0) / 2
    Bx0 = linalg.mat_vec(X.B, x0)
    gamma = tuple(
        X.gamma[k] + ax0 * x0[k] - half_sq * X.alpha[k] - X.c * x0[k] - Bx0[k] for k in range(X.dim)
    )
    return CkField(X.alpha, X.c - ax0, linalg.mat_add(X.B, linalg.wedge_matrix(X.alpha, x0)), gamma)


@_act.register
def _(move: Dilation, X):
    return CkField(linalg.scale(1 / move.r, X.alpha), X.c, X.B, linalg.scale(move.r, X.gamma))


@_act.register
def _(move: Rotation, X):
    Rt = linalg.transpose(move.R)
    if len(Rt) != X.dim:
        raise DimensionMismatchError("Rotation dimension does not match the field")
    return CkField(
        linalg.mat_vec(Rt, X.alpha),
        X.c,
        linalg.mat_mul(linalg.mat_mul(Rt, X.B), move.R),
        linalg.mat_vec(Rt, X.gamma),
    )


@_act.register
def _(move: Inversion, X):
    return CkField(linalg.scale(-2, X.gamma), -X.c, X.B, linalg.scale(Fraction(-1, 2), X.alpha))


@_act.register
def _(move: Scalar, X):
    return X.scaled(move.k)


def act(X, move):
    """Transform the parameters of X under a conformal move."""
    return _act(move, X)


def apply_chain(X, chain):
    """Apply moves left to right."""
    for move in chain:
        X = act(X, move)
    return X


def move_inverse(move):
    if isinstance(move, Translation):
        return Translation(linalg.neg(move.x0))
    if isinstance(move, Dilation):
        return Dilation(1 / move.r)
    if isinstance(move, Rotation):
        return Rotation(linalg.transpose(move.R))
    if isinstance(move, Scalar):
        return Scalar(1 / move.k)
    return move


def chain_inverse(chain):
    return [move_inverse(m) for m in reversed(chain)]


def rotation_from_skew(A):
    """Exact rational rotation (I − A)(I + A)⁻¹ from a skew matrix A (Cayley transform)."""
    A = linalg.matrix(A)
    if not linalg.is_skew(A):
        raise ValidationError("Cayley transform needs a skew-symmetric matrix")
    n = len(A)
    eye = linalg.identity(n)
    return linalg.mat_mul(linalg.mat_sub(eye, A), linalg.inverse(linalg.mat_add(eye, A)))


def transported_value(move, X, x):
    """κ(x)·DF(x)ᵀ·X(F(x)), the value the transformed field must take at x."""
    x = linalg.vector(x)
    if isinstance(move, Translation):
        return evaluate(X, linalg.sub(x, move.x0))
    if isinstance(move, Dilation):
        return linalg.scale(move.r, evaluate(X, linalg.scale(1 / move.r, x)))
    if isinstance(move, Rotation):
        return linalg.mat_vec(linalg.transpose(move.R), evaluate(X, linalg.mat_vec(move.R, x)))
    if isinstance(move, Scalar):
        return linalg.scale(move.k, evaluate(X, x))
    if isinstance(move, Inversion):
        sq = linalg.norm_sq(x)
        if sq == 0:
            raise ValidationError("Inversion is undefined at the origin")
        value = evaluate(X, linalg.scale(1 / sq, x))
        xv = linalg.dot(x, value)
        return tuple(sq * value[k] - 2 * xv * x[k] for k in range(len(x)))
    raise ValidationError(f"Unknown conformal move {move!r}")
