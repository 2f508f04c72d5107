"""Algebraic LCW conditions on conformal Killing parameters and their pointwise differential checks."""

from __future__ import annotations

from dataclasses import dataclass

from ckf.fields import evaluate, jacobian
from ratmath import linalg
from ratmath.tensor import TensorTable, one_form, skew_to_two_form, wedge
from utils.errors import ZeroFieldError


@dataclass(frozen=True)
class LcwConditions:
    b_wedge_gamma: TensorTable
    cB_minus_alpha_wedge_gamma: TensorTable
    passed: bool


@dataclass(frozen=True)
class DifferentialSample:
    point: tuple
    eq1: bool
    eq2: bool
    eq3: bool


@dataclass(frozen=True)
class DifferentialChecks:
    samples: tuple

    @property
    def eq1(self):
        return all(s.eq1 for s in self.samples)

    @property
    def eq2(self):
        return all(s.eq2 for s in self.samples)

    @property
    def eq3(self):
        return all(s.eq3 for s in self.samples)

    @property
    def passed(self):
        return self.eq1 and self.eq2 and self.eq3


def lcw_conditions(X):
    """Evaluate B∧γ and cB − α∧γ with B read as the 2-form Σ_{j<k} b_kj dx_j∧dx_k."""
    b_form = skew_to_two_form(X.B)
    gamma = one_form(X.gamma)
    b_wedge_gamma = wedge(b_form, gamma)
    cb_minus = b_form.scale(X.c) - wedge(one_form(X.alpha), gamma)
    return LcwConditions(b_wedge_gamma, cb_minus, b_wedge_gamma.is_zero() and cb_minus.is_zero())


def exterior_derivative(X, x):
    """dX at x as an antisymmetric table: (dX)_pq = ½(∂_p X_q − ∂_q X_p)."""
    J = jacobian(X, x)
    return TensorTable.from_function(2, X.dim, lambda p, q: (J[q][p] - J[p][q]) / 2, (("alt", (0, 1)),))


def differential_checks(X, samples):
    """Check dX∧X = 0, dX∧d|X|² = 0 and |d|X|²∧X|² = |X|⁴|dX|² exactly at rational points.

    Args:
    ----
        X (CkField): The field to test.
        samples (list): Rational points where X is nonzero.

    Returns:
    -------
        DifferentialChecks: Per-sample verdicts; the eq1/eq2/eq3 properties aggregate them.

    """
    results = []
    for x in samples:
        x = linalg.vector(x)
        value = evaluate(X, x)
        if linalg.is_zero(value):
            raise ZeroFieldError(f"X vanishes at sample {x}")
        J = jacobian(X, x)
        dX = exterior_derivative(X, x)
        grad_sq = tuple(2 * sum(value[k] * J[k][j] for k in range(X.dim)) for j in range(X.dim))
        X_form = one_form(value)
        eq1 = wedge(dX, X_form).is_zero()
        eq2 = wedge(dX, one_form(grad_sq)).is_zero()
        lhs = wedge(one_form(grad_sq), X_form).norm_sq()
        eq3 = lhs == linalg.norm_sq(value) ** 2 * dX.norm_sq()
        results.append(DifferentialSample(x, eq1, eq2, eq3))
    return DifferentialChecks(tuple(results))
