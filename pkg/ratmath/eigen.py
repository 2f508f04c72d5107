"""Floating-point fallbacks: cyclic Jacobi eigensolver and rationalization of numeric directions."""

from fractions import Fraction
from math import atan2, cos, sin, sqrt

import numpy as np

from ratmath.linalg import integer_direction, is_symmetric, matrix
from utils.config import EIGEN_TOL, MAX_DENOMINATOR
from utils.errors import NonSymmetricError

MAX_SWEEPS = 60


def sym_eigen_numeric(m, tol=EIGEN_TOL):
    """Eigen-decompose a symmetric rational matrix with cyclic Jacobi rotations.

    Args:
    ----
        m: Square symmetric matrix of rationals (rows of Fraction/int).
        tol (float): Target residual ‖m v − λ v‖ per eigenpair.

    Returns:
    -------
        tuple: (eigenvalues ascending as a list of floats, numpy array whose columns are the eigenvectors).

    """
    m = matrix(m)
    if not is_symmetric(m):
        raise NonSymmetricError("sym_eigen_numeric needs an exactly symmetric matrix")
    n = len(m)
    a = np.array([[float(x) for x in row] for row in m], dtype=float)
    v = np.eye(n)

    scale = max(float(np.linalg.norm(a)), 1.0)
    previous = float("inf")
    for _ in range(MAX_SWEEPS):
        off = sqrt(max(float(np.sum(a * a) - np.sum(np.diag(a) ** 2)), 0.0))
        if off <= 0.1 * tol:
            break
        # a stalled sweep near machine precision is rounding noise
        if off < 1e-10 * scale and off >= 0.5 * previous:
            break
        previous = off
        for p in range(n - 1):
            for q in range(p + 1, n):
                if abs(a[p, q]) < 1e-300:
                    continue
                theta = 0.5 * atan2(2.0 * a[p, q], a[q, q] - a[p, p])
                c, s = cos(theta), sin(theta)
                g = np.eye(n)
                g[p, p] = g[q, q] = c
                g[p, q] = s
                g[q, p] = -s
                a = g.T @ a @ g
                a[p, q] = a[q, p] = 0.0
                v = v @ g

    eigenvalues = np.diag(a).copy()
    order = np.argsort(eigenvalues, kind="stable")
    return [float(x) for x in eigenvalues[order]], v[:, order]


def rationalize_direction(v, max_denominator=MAX_DENOMINATOR):
    """Round a float direction to a coprime integer direction by continued fractions.

    The direction is first scaled so its largest component is ±1, then each
    component is replaced by its best rational approximation with bounded
    denominator. Returns None for the zero vector.
    """
    v = [float(x) for x in v]
    top = max((abs(x) for x in v), default=0.0)
    if top == 0.0:
        return None
    approx = [Fraction(x / top).limit_denominator(max_denominator) for x in v]
    if all(a == 0 for a in approx):
        return None
    return integer_direction(approx)
