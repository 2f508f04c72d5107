"""Eigenflag directions of a three-dimensional Cotton-York tensor."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ratmath import linalg
from ratmath.eigen import rationalize_direction, sym_eigen_numeric
from utils.config import MAX_DENOMINATOR
from utils.errors import DimensionMismatchError, NonSymmetricError, ValidationError
from utils.logging import logger


@dataclass(frozen=True)
class FlagCertificate:
    """A candidate eigenflag direction.

    Exact certificates carry an integer direction and a zero defect; numeric
    ones carry the float direction and the residual at which the search stopped.
    """

    direction: tuple
    mode: str
    defect: Fraction | float

    @property
    def exact(self):
        return self.mode == "exact"


@dataclass(frozen=True)
class FlagSet:
    certificates: tuple = ()
    all_directions: bool = False
    det: Fraction = Fraction(0)


def _require_3x3(CY):
    CY = linalg.matrix(CY)
    if len(CY) != 3 or any(len(row) != 3 for row in CY):
        raise DimensionMismatchError("Cotton-York tensors are 3×3 matrices")
    return CY


def det_cy(CY):
    return linalg.det(_require_3x3(CY))


def perp_basis_3d(v):
    """Exact basis {w1, w2} of v^⊥ by cross products."""
    axis = min(range(3), key=lambda i: (abs(v[i]), i))
    w1 = linalg.cross(v, linalg.basis_vector(3, axis))
    return w1, linalg.cross(v, w1)


def eigenflag_check_3d(CY, v):
    """True iff CY(v, v) = 0 and CY vanishes on v^⊥ × v^⊥."""
    CY = _require_3x3(CY)
    v = linalg.vector(v)
    if len(v) != 3:
        raise DimensionMismatchError("Direction must be three-dimensional")
    if linalg.is_zero(v):
        raise ValidationError("Eigenflag direction must be nonzero")
    if linalg.bilinear(CY, v, v) != 0:
        return False
    w1, w2 = perp_basis_3d(v)
    return all(linalg.bilinear(CY, a, b) == 0 for a, b in ((w1, w1), (w1, w2), (w2, w2)))


def flag_defect_3d(CY, v):
    """Float residual |CY(v,v)| + Σ|CY(w_i,w_j)| for unit v and an orthonormal basis of v^⊥."""
    m = np.array([linalg.to_float(row) for row in CY])
    v = np.asarray(v, dtype=float)
    v = v / np.linalg.norm(v)
    q, _ = np.linalg.qr(np.column_stack([v, np.eye(3)]))
    w = q[:, 1:3]
    return float(abs(v @ m @ v) + np.sum(np.abs(w.T @ m @ w)))


def eigenflag_find_3d(CY, max_denominator=MAX_DENOMINATOR):
    """Find the eigenflag directions of a symmetric trace-free CY.

    Args:
    ----
        CY: 3×3 rational matrix.
        max_denominator (int): Bound used when rounding numeric candidates.

    Returns:
    -------
        FlagSet: all_directions when CY = 0, no certificates when det CY ≠ 0,
        otherwise the two candidates u₊ ± u₋ built from the eigenvectors of ±μ.

    """
    CY = _require_3x3(CY)
    if not linalg.is_symmetric(CY):
        raise NonSymmetricError("Cotton-York tensor must be symmetric")
    if linalg.trace(CY) != 0:
        raise ValidationError("Cotton-York tensor must be trace-free")
    if linalg.is_zero_matrix(CY):
        return FlagSet(all_directions=True)
    det = linalg.det(CY)
    if det != 0:
        return FlagSet(det=det)

    _, vectors = sym_eigen_numeric(CY)
    u_minus, u_plus = vectors[:, 0], vectors[:, 2]
    certificates = []
    for candidate in (u_plus + u_minus, u_plus - u_minus):
        candidate = candidate / np.linalg.norm(candidate)
        rounded = rationalize_direction(candidate, max_denominator)
        if rounded is not None and eigenflag_check_3d(CY, rounded):
            certificates.append(FlagCertificate(rounded, "exact", Fraction(0)))
        else:
            defect = flag_defect_3d(CY, candidate)
            logger.debug(f"Cotton-York flag candidate stays numeric, defect {defect:.3e}")
            certificates.append(FlagCertificate(tuple(float(x) for x in candidate), "numeric", defect))
    certificates.sort(key=lambda c: (not c.exact, tuple(-float(x) for x in c.direction)))
    return FlagSet(certificates=tuple(certificates), det=det)
