"""Dense exact linear algebra on tuples of Fractions.

Vectors are tuples, matrices are tuples of row tuples. Every function returns
new immutable values. Elimination (rank, det, rref, inverse, solve) runs on
sympy DomainMatrix over QQ.
"""

from fractions import Fraction
from functools import reduce
from math import gcd, lcm

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from ratmath.rational import from_sympy
from utils.errors import DimensionMismatchError, ValidationError, ZeroFieldError


def vector(values):
    return tuple(Fraction(v) for v in values)


def matrix(rows):
    return tuple(tuple(Fraction(v) for v in row) for row in rows)


def zeros(n):
    return (Fraction(0),) * n


def zero_matrix(rows, cols=None):
    cols = rows if cols is None else cols
    return tuple((Fraction(0),) * cols for _ in range(rows))


def identity(n):
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def basis_vector(n, i, scale=1):
    return tuple(Fraction(scale) if j == i else Fraction(0) for j in range(n))


def _same_length(u, v):
    if len(u) != len(v):
        raise DimensionMismatchError(f"Vector lengths differ: {len(u)} and {len(v)}")


def dot(u, v):
    _same_length(u, v)
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def add(u, v):
    _same_length(u, v)
    return tuple(a + b for a, b in zip(u, v))


def sub(u, v):
    _same_length(u, v)
    return tuple(a - b for a, b in zip(u, v))


def scale(k, v):
    k = Fraction(k)
    return tuple(k * a for a in v)


def neg(v):
    return tuple(-a for a in v)


def norm_sq(v):
    return dot(v, v)


def is_zero(v):
    return all(a == 0 for a in v)


def cross(u, v):
    if len(u) != 3 or len(v) != 3:
        raise DimensionMismatchError("Cross product needs 3-vectors")
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def wedge_matrix(a, b):
    """Skew matrix of a∧b with entries a_j b_k - b_j a_k."""
    _same_length(a, b)
    return tuple(tuple(a[j] * b[k] - b[j] * a[k] for k in range(len(a))) for j in range(len(a)))


def transpose(m):
    return tuple(zip(*m)) if m else ()


def mat_vec(m, v):
    return tuple(dot(row, v) for row in m)


def mat_mul(a, b):
    if a and len(a[0]) != len(b):
        raise DimensionMismatchError(f"Cannot multiply {len(a)}x{len(a[0])} by {len(b)}x{len(b[0]) if b else 0}")
    columns = transpose(b)
    return tuple(tuple(dot(row, col) for col in columns) for row in a)


def mat_add(a, b):
    return tuple(add(r, s) for r, s in zip(a, b))


def mat_sub(a, b):
    return tuple(sub(r, s) for r, s in zip(a, b))


def mat_scale(k, m):
    return tuple(scale(k, row) for row in m)


def is_square(m):
    return all(len(row) == len(m) for row in m)


def is_symmetric(m):
    return is_square(m) and all(m[i][j] == m[j][i] for i in range(len(m)) for j in range(i + 1, len(m)))


def is_skew(m):
    return is_square(m) and all(m[i][j] == -m[j][i] for i in range(len(m)) for j in range(i, len(m)))


def is_zero_matrix(m):
    return all(a == 0 for row in m for a in row)


def trace(m):
    return sum((m[i][i] for i in range(len(m))), Fraction(0))


def bilinear(m, u, v):
    """Evaluate uᵀ m v."""
    return dot(u, mat_vec(m, v))


def to_domain_matrix(m):
    """The matrix as a sympy DomainMatrix over QQ."""
    rows = [[QQ(a.numerator, a.denominator) for a in map(Fraction, row)] for row in m]
    return DomainMatrix(rows, (len(rows), len(rows[0]) if rows else 0), QQ)


def _fraction(x):
    return from_sympy(QQ.to_sympy(x))


def _to_rows(dm):
    return tuple(tuple(_fraction(a) for a in row) for row in dm.to_list())


def rref(m):
    """Reduced row echelon form and pivot columns."""
    reduced, pivots = to_domain_matrix(m).rref()
    return _to_rows(reduced), tuple(pivots)


def rank(m):
    if not m:
        return 0
    return int(to_domain_matrix(m).rank())


def det(m):
    if not is_square(m):
        raise DimensionMismatchError("Determinant of a non-square matrix")
    if not m:
        return Fraction(1)
    return _fraction(to_domain_matrix(m).det())


def nullspace(m, n_cols=None):
    """Exact basis of {x : m x = 0}, one vector per free column, that entry set to 1."""
    n_cols = len(m[0]) if m else n_cols
    if not m:
        return [basis_vector(n_cols, i) for i in range(n_cols)]
    reduced, pivots = rref(m)
    basis = []
    for free in (c for c in range(n_cols) if c not in pivots):
        x = [Fraction(0)] * n_cols
        x[free] = Fraction(1)
        for row, c in zip(reduced, pivots):
            x[c] = -row[free]
        basis.append(tuple(x))
    return basis


def orthogonal_complement(vectors, n):
    """Exact basis of the orthogonal complement of span(vectors) in Q^n."""
    return nullspace([tuple(v) for v in vectors], n_cols=n)


def _require_invertible(m, message):
    if not m or not is_square(m) or rank(m) < len(m):
        raise ValidationError(message)
    return to_domain_matrix(m)


def solve(m, b):
    """Solve m x = b for square invertible m."""
    a = _require_invertible(m, "Singular system")
    x = a.lu_solve(to_domain_matrix([(v,) for v in b]))
    return tuple(row[0] for row in _to_rows(x))


def inverse(m):
    return _to_rows(_require_invertible(m, "Matrix is singular").inv())


def in_span(vectors, v):
    if not vectors:
        return is_zero(v)
    return rank(list(vectors) + [v]) == rank(list(vectors))


def integer_direction(v):
    """Scale v to coprime integers with the first nonzero entry positive."""
    v = vector(v)
    if is_zero(v):
        raise ZeroFieldError("Zero vector has no direction")
    common = reduce(lcm, (a.denominator for a in v), 1)
    ints = [int(a * common) for a in v]
    divisor = reduce(gcd, (abs(a) for a in ints if a), 0)
    first = next(a for a in ints if a)
    sign = 1 if first > 0 else -1
    return tuple(Fraction(sign * a // divisor) for a in ints)


def to_float(v):
    return [float(a) for a in v]
