"""Euclidean conformal Killing fields in parameter form (α, c, B, γ)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ratmath import linalg
from ratmath.rational import format_rational
from utils.errors import DimensionMismatchError, NonSkewError, ValidationError, ZeroFieldError


@dataclass(frozen=True)
class CkField:
    """The field X(x) = (α·x)x − ½α|x|² + cx + Bx + γ on R^n."""

    alpha: tuple
    c: Fraction
    B: tuple
    gamma: tuple

    def __post_init__(self):
        alpha = linalg.vector(self.alpha)
        gamma = linalg.vector(self.gamma)
        B = linalg.matrix(self.B)
        n = len(alpha)
        if n < 3:
            raise ValidationError(f"Conformal Killing fields need n >= 3, got n = {n}")
        if len(gamma) != n or len(B) != n or any(len(row) != n for row in B):
            raise DimensionMismatchError(f"alpha, B and gamma must all have dimension {n}")
        if not linalg.is_skew(B):
            raise NonSkewError("B must be skew-symmetric (B + Bᵀ = 0)")
        c = Fraction(self.c)
        if linalg.is_zero(alpha) and c == 0 and linalg.is_zero_matrix(B) and linalg.is_zero(gamma):
            raise ZeroFieldError("Conformal Killing field parameters are all zero")
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "gamma", gamma)
        object.__setattr__(self, "B", B)
        object.__setattr__(self, "c", c)

    @property
    def dim(self):
        return len(self.alpha)

    def scaled(self, k):
        alpha, gamma = linalg.scale(k, self.alpha), linalg.scale(k, self.gamma)
        return CkField(alpha, k * self.c, linalg.mat_scale(k, self.B), gamma)

    def describe(self):
        def vec(v):
            return "(" + ", ".join(format_rational(a) for a in v) + ")"

        rows = ", ".join(vec(row) for row in self.B)
        return f"alpha={vec(self.alpha)} c={format_rational(self.c)} B=[{rows}] gamma={vec(self.gamma)}"


@dataclass(frozen=True)
class CkSelftest:
    passes: bool
    linear: tuple
    constant: Fraction


def evaluate(X, x):
    """Exact value X(x) at a rational point."""
    x = linalg.vector(x)
    if len(x) != X.dim:
        raise DimensionMismatchError(f"Point has dimension {len(x)}, field has {X.dim}")
    ax = linalg.dot(X.alpha, x)
    half_sq = linalg.norm_sq(x) / 2
    Bx = linalg.mat_vec(X.B, x)
    return tuple(ax * x[k] - half_sq * X.alpha[k] + X.c * x[k] + Bx[k] + X.gamma[k] for k in range(X.dim))


def evaluate_float(X, x):
    x = np.asarray(x, dtype=float)
    alpha = np.array(linalg.to_float(X.alpha))
    B = np.array([linalg.to_float(row) for row in X.B])
    gamma = np.array(linalg.to_float(X.gamma))
    return (alpha @ x) * x - 0.5 * alpha * (x @ x) + float(X.c) * x + B @ x + gamma


def jacobian(X, x):
    """Matrix J with J[k][j] = ∂_j X_k at x."""
    x = linalg.vector(x)
    n = X.dim
    ax = linalg.dot(X.alpha, x)
    return tuple(
        tuple(
            X.alpha[j] * x[k] - X.alpha[k] * x[j] + (ax + X.c if j == k else 0) + X.B[k][j]
            for j in range(n)
        )
        for k in range(n)
    )


def _jacobian_coefficients(X):
    """Split J(x) = J0 + Σ_i x_i J_i into its constant and linear coefficient matrices."""
    n = X.dim
    a = X.alpha
    J0 = tuple(tuple((X.c if j == k else 0) + X.B[k][j] for j in range(n)) for k in range(n))
    Js = [
        tuple(
            tuple((a[j] if k == i else 0) + (a[i] if k == j else 0) - (a[k] if j == i else 0) for j in range(n))
            for k in range(n)
        )
        for i in range(n)
    ]
    return J0, Js


def _scalar_part(m):
    """Return q when m == q·I, else None."""
    q = m[0][0]
    n = len(m)
    if all(m[i][j] == (q if i == j else 0) for i in range(n) for j in range(n)):
        return q
    return None


def conformal_killing_selftest(X):
    """Check ∂_j X_k + ∂_k X_j = λ(x) δ_jk as a polynomial identity.

    Returns:
    -------
        CkSelftest: passes flag and λ(x) = linear·x + constant.

    """
    J0, Js = _jacobian_coefficients(X)
    constant = _scalar_part(linalg.mat_add(J0, linalg.transpose(J0)))
    linear = [_scalar_part(linalg.mat_add(Ji, linalg.transpose(Ji))) for Ji in Js]
    passes = constant is not None and all(q is not None for q in linear)
    return CkSelftest(
        passes=passes,
        linear=tuple(q if q is not None else Fraction(0) for q in linear),
        constant=constant if constant is not None else Fraction(0),
    )


def ck_defect_numeric(X, x, h=1e-6):
    """Finite-difference conformal Killing defect max|∂X + ∂Xᵀ − (2/n) div X · I| at a float point."""
    x = np.asarray(x, dtype=float)
    n = X.dim
    J = np.zeros((n, n))
    for j in range(n):
        step = np.zeros(n)
        step[j] = h
        J[:, j] = (evaluate_float(X, x + step) - evaluate_float(X, x - step)) / (2 * h)
    sym = J + J.T
    return float(np.max(np.abs(sym - (2.0 / n) * np.trace(J) * np.eye(n))))
