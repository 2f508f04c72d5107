"""Metric Lie algebras given by structure constants in an orthonormal frame."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from ratmath import linalg
from utils.errors import DimensionMismatchError, JacobiError, NonSkewError, ValidationError
from utils.logging import logger

SUPPORTED_DIMS = (3, 4)


@dataclass(frozen=True)
class LieAlgebra:
    """Structure constants c[i][j][k] = c_ij^k, i.e. [e_i, e_j] = Σ_k c_ij^k e_k, frame orthonormal."""

    dim: int
    constants: tuple
    orthonormal: bool = True

    def bracket_basis(self, i, j):
        return self.constants[i][j]

    def bracket(self, u, v):
        """[u, v] for constant-coefficient combinations of the frame."""
        n = self.dim
        out = [Fraction(0)] * n
        for i in range(n):
            if u[i] == 0:
                continue
            for j in range(n):
                if v[j] == 0 or i == j:
                    continue
                coeff = u[i] * v[j]
                for k, c in enumerate(self.constants[i][j]):
                    if c:
                        out[k] += coeff * c
        return tuple(out)

    def is_abelian(self):
        return all(c == 0 for plane in self.constants for row in plane for c in row)

    def nonzero_brackets(self):
        """{(i, j): {k: c}} for i < j, the shape used by input files."""
        result = {}
        for i, j in combinations(range(self.dim), 2):
            terms = {k: c for k, c in enumerate(self.constants[i][j]) if c != 0}
            if terms:
                result[(i, j)] = terms
        return result


def _dense_constants(dim, brackets):
    table = [[[Fraction(0)] * dim for _ in range(dim)] for _ in range(dim)]
    for (i, j), terms in brackets.items():
        if not (0 <= i < dim and 0 <= j < dim):
            raise DimensionMismatchError(f"Bracket pair ({i}, {j}) out of range for dim {dim}")
        if i == j:
            if any(Fraction(v) != 0 for v in terms.values()):
                raise NonSkewError(f"[e{i}, e{i}] must vanish")
            continue
        for k, value in terms.items():
            if not 0 <= k < dim:
                raise DimensionMismatchError(f"Bracket result index {k} out of range for dim {dim}")
            value = Fraction(value)
            previous = table[i][j][k]
            if previous != 0 and previous != value:
                raise NonSkewError(f"Conflicting values for c_{i}{j}^{k}")
            table[i][j][k] = value
            table[j][i][k] = -value
    return tuple(tuple(tuple(row) for row in plane) for plane in table)


def jacobi_defect(L, i, j, k):
    """Σ_cyc [[e_i, e_j], e_k] as a vector."""
    n = L.dim
    e = [linalg.basis_vector(n, m) for m in range(n)]
    total = linalg.zeros(n)
    for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
        total = linalg.add(total, L.bracket(L.constants[a][b], e[c]))
    return total


def jacobi_defects(L):
    """Every triple i < j < k whose cyclic sum is nonzero, with its defect vector."""
    failures = []
    for i, j, k in combinations(range(L.dim), 3):
        defect = jacobi_defect(L, i, j, k)
        if not linalg.is_zero(defect):
            failures.append(((i, j, k), defect))
    return failures


def load(dim, brackets, skip_jacobi=False):
    """Build and validate a metric Lie algebra.

    Args:
    ----
        dim (int): 3 or 4.
        brackets (dict): {(i, j): {k: value}}; only one ordering of each pair is needed.
        skip_jacobi (bool): Keep algebras that fail the Jacobi identity (broken fixtures only).

    Returns:
    -------
        LieAlgebra: The validated algebra.

    """
    if dim not in SUPPORTED_DIMS:
        raise ValidationError(f"Only dimensions {SUPPORTED_DIMS} are supported, got {dim}")
    L = LieAlgebra(dim, _dense_constants(dim, brackets))
    failures = jacobi_defects(L)
    if failures:
        triple, defect = failures[0]
        if not skip_jacobi:
            raise JacobiError(triple, defect)
        logger.warning(f"Keeping algebra that fails the Jacobi identity at {len(failures)} triple(s)")
    return L


def from_constants(constants, skip_jacobi=False):
    """Build from a dense c[i][j][k] table, checking antisymmetry in (i, j)."""
    n = len(constants)
    brackets = {}
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if Fraction(constants[i][j][k]) != -Fraction(constants[j][i][k]):
                    raise NonSkewError(f"c_{i}{j}^{k} is not antisymmetric in (i, j)")
            if i < j:
                brackets[(i, j)] = {k: constants[i][j][k] for k in range(n)}
    return load(n, brackets, skip_jacobi=skip_jacobi)


def diagonal_3d(l1, l2, l3):
    """Unimodular 3D algebra [e0, e1] = l3 e2, [e1, e2] = l1 e0, [e2, e0] = l2 e1.

    One-based labels e1, e2, e3 map to frame indices 0, 1, 2.
    """
    l1, l2, l3 = Fraction(l1), Fraction(l2), Fraction(l3)
    return load(3, {(0, 1): {2: l3}, (1, 2): {0: l1}, (0, 2): {1: -l2}})
