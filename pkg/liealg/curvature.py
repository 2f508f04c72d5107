"""Exact curvature of left-invariant metrics in an orthonormal frame.

Every quantity is constant in the frame, so covariant derivatives reduce to
sums over the connection coefficients n_ijk = g(∇_{e_i} e_j, e_k). Signs are
fixed so that R_0101 of the four-dimensional type-B example is −11/16 and
Ric_jk = Σ_i R_ijik.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from ratmath import linalg
from ratmath.tensor import TensorTable
from utils.errors import DimensionMismatchError, NotWeylError, ValidationError

BIVECTOR_BASIS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))

CONNECTION_SYMMETRIES = (("anti", (1, 2)),)
RIEMANN_SYMMETRIES = (("anti", (0, 1)), ("anti", (2, 3)), ("pairs", ((0, 1), (2, 3))), ("bianchi", (0, 1, 2)))
WEYL_SYMMETRIES = RIEMANN_SYMMETRIES + (("traceless", (0, 2)),)
COTTON_SYMMETRIES = (("anti", (0, 1)), ("bianchi", (0, 1, 2)), ("traceless", (0, 2)), ("traceless", (1, 2)))


@dataclass(frozen=True)
class CurvaturePack:
    """Everything the flag and distribution checks need from one algebra."""

    dim: int
    connection: TensorTable
    riemann: TensorTable
    ricci: tuple
    scalar: Fraction
    schouten: tuple
    cotton: TensorTable | None = None
    cotton_york: tuple | None = None
    weyl: TensorTable | None = None
    w6: tuple | None = None


def _levi_civita(i, j, k):
    if len({i, j, k}) < 3:
        return 0
    return 1 if (i, j, k) in ((0, 1, 2), (1, 2, 0), (2, 0, 1)) else -1


@lru_cache(maxsize=1024)
def _nabla(L):
    c = L.constants
    n = L.dim
    return tuple(
        tuple(tuple((c[i][j][k] - c[j][k][i] + c[k][i][j]) / 2 for k in range(n)) for j in range(n))
        for i in range(n)
    )


@lru_cache(maxsize=1024)
def _riemann(L):
    nb = _nabla(L)
    c = L.constants
    n = L.dim
    out = [[[[Fraction(0)] * n for _ in range(n)] for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(n):
                for p in range(n):
                    total = Fraction(0)
                    for m in range(n):
                        total += nb[j][k][m] * nb[i][m][p] - nb[i][k][m] * nb[j][m][p] - c[i][j][m] * nb[m][k][p]
                    out[i][j][k][p] = -total
                    out[j][i][k][p] = total
    return tuple(tuple(tuple(tuple(row) for row in plane) for plane in block) for block in out)


def _ricci_rows(L):
    R = _riemann(L)
    n = L.dim
    return tuple(tuple(sum((R[i][j][i][k] for i in range(n)), Fraction(0)) for k in range(n)) for j in range(n))


def connection_coefficients(L):
    """Nested tuple n[i][j][k] of connection coefficients."""
    return _nabla(L)


def connection(L):
    """Connection table n_ijk = g(∇_{e_i} e_j, e_k), Koszul formula for a left-invariant metric."""
    return TensorTable(3, L.dim, (a for plane in _nabla(L) for row in plane for a in row), CONNECTION_SYMMETRIES)


def covariant(L, u, v):
    """∇_u v for constant-coefficient combinations u, v of the frame."""
    nb = _nabla(L)
    n = L.dim
    out = [Fraction(0)] * n
    for i in range(n):
        if u[i] == 0:
            continue
        for j in range(n):
            if v[j] == 0:
                continue
            coeff = u[i] * v[j]
            for k in range(n):
                out[k] += coeff * nb[i][j][k]
    return tuple(out)


def riemann(L):
    R = _riemann(L)
    return TensorTable(4, L.dim, (a for x in R for y in x for z in y for a in z), RIEMANN_SYMMETRIES)


def ricci(L):
    return _ricci_rows(L)


def scalar(L):
    return linalg.trace(_ricci_rows(L))


def schouten(L):
    """S = (Ric − s/(2(n−1)) g) / (n − 2)."""
    n = L.dim
    rows = _ricci_rows(L)
    s = linalg.trace(rows)
    shift = s / (2 * (n - 1))
    return tuple(tuple((rows[i][j] - (shift if i == j else 0)) / (n - 2) for j in range(n)) for i in range(n))


def cotton(L):
    """C_ijk = (∇_{e_i} S)(e_j, e_k) − (∇_{e_j} S)(e_i, e_k) with S constant in the frame."""
    if L.dim != 3:
        raise ValidationError("The Cotton tensor is only computed for three-dimensional algebras")
    nb = _nabla(L)
    S = schouten(L)
    n = L.dim

    def entry(i, j, k):
        total = Fraction(0)
        for m in range(n):
            total += -nb[i][j][m] * S[m][k] - nb[i][k][m] * S[j][m] + nb[j][i][m] * S[m][k] + nb[j][k][m] * S[i][m]
        return total

    return TensorTable.from_function(3, n, entry, COTTON_SYMMETRIES)


def cotton_york(L):
    """CY_ab = ½ Σ ε_aij C_ijb, symmetric and trace-free in dimension three."""
    C = cotton(L)
    return tuple(
        tuple(
            sum((_levi_civita(a, i, j) * C[i, j, b] for i in range(3) for j in range(3)), Fraction(0)) / 2
            for b in range(3)
        )
        for a in range(3)
    )


def kulkarni_nomizu(h, k):
    """(h ⊘ k)_ijkl = h_ik k_jl + h_jl k_ik − h_il k_jk − h_jk k_il for symmetric h, k."""
    n = len(h)
    if len(k) != n:
        raise DimensionMismatchError("Kulkarni-Nomizu product of matrices of different sizes")
    return TensorTable.from_function(
        4,
        n,
        lambda i, j, a, b: h[i][a] * k[j][b] + h[j][b] * k[i][a] - h[i][b] * k[j][a] - h[j][a] * k[i][b],
        RIEMANN_SYMMETRIES,
    )


def weyl(L):
    """W = R − S ⊘ g."""
    if L.dim != 4:
        raise ValidationError("The Weyl tensor is only computed for four-dimensional algebras")
    W = riemann(L) - kulkarni_nomizu(schouten(L), linalg.identity(4))
    return W.with_symmetries(WEYL_SYMMETRIES)


def bivector_matrix(W):
    """Matrix of a curvature-type table acting on Λ² in the bivector basis e0∧e1, e0∧e2, ..., e2∧e3."""
    if (W.rank, W.dim) != (4, 4):
        raise DimensionMismatchError("Bivector operators are defined for rank-4 tables over dimension 4")
    return tuple(tuple(W[i, j, k, m] for k, m in BIVECTOR_BASIS) for i, j in BIVECTOR_BASIS)


def weyl_bivector_operator(L):
    return bivector_matrix(weyl(L))


def weyl_from_components(components, dim=4):
    """Complete a Weyl table from listed components W_ijkl and check its symmetries.

    Args:
    ----
        components (dict): {(i, j, k, l): value}; the symmetric images of each entry are filled in.
        dim (int): Ambient dimension.

    Returns:
    -------
        TensorTable: The completed table.

    """
    entries = {}

    def put(idx, value):
        previous = entries.get(idx)
        if previous is not None and previous != value:
            raise NotWeylError(f"Component {idx} listed with conflicting values {previous} and {value}")
        entries[idx] = value

    for (i, j, k, m), value in components.items():
        value = Fraction(value)
        for a, b, sign_ab in ((i, j, 1), (j, i, -1)):
            for p, q, sign_pq in ((k, m, 1), (m, k, -1)):
                put((a, b, p, q), sign_ab * sign_pq * value)
                put((p, q, a, b), sign_ab * sign_pq * value)
    W = TensorTable.from_components(4, dim, entries, WEYL_SYMMETRIES)
    failed = W.check_symmetries()
    if failed:
        raise NotWeylError(f"Listed components do not form a Weyl tensor; failing symmetries: {failed}")
    return W


def mu_3d(l1, l2, l3):
    """μ_i = ½(λ1 + λ2 + λ3) − λ_i."""
    l1, l2, l3 = Fraction(l1), Fraction(l2), Fraction(l3)
    half = (l1 + l2 + l3) / 2
    return half - l1, half - l2, half - l3


def ricci_closed_form_3d(l1, l2, l3):
    """Diagonal Ricci (2μ2μ3, 2μ1μ3, 2μ1μ2) and s = 2(μ1μ2 + μ1μ3 + μ2μ3) of a unimodular 3D algebra."""
    m1, m2, m3 = mu_3d(l1, l2, l3)
    return (2 * m2 * m3, 2 * m1 * m3, 2 * m1 * m2), 2 * (m1 * m2 + m1 * m3 + m2 * m3)


def cotton_york_closed_form_3d(l1, l2, l3):
    """Diagonal of CY for a unimodular 3D algebra, from the diagonal Cotton components.

    With n_{012} = μ1, n_{120} = μ2, n_{201} = μ3 and S = Ric − s/4:
    CY_00 = C_120, CY_11 = C_201, CY_22 = C_012.
    """
    m1, m2, m3 = mu_3d(l1, l2, l3)
    ric, s = ricci_closed_form_3d(l1, l2, l3)
    s1, s2, s3 = (r - s / 4 for r in ric)
    return (
        m2 * (s3 - s1) + m3 * (s2 - s1),
        m3 * (s1 - s2) + m1 * (s3 - s2),
        m1 * (s2 - s3) + m2 * (s1 - s3),
    )


def curvature_pack(L):
    """Run the full pipeline for one algebra."""
    base = dict(
        dim=L.dim,
        connection=connection(L),
        riemann=riemann(L),
        ricci=ricci(L),
        scalar=scalar(L),
        schouten=schouten(L),
    )
    if L.dim == 3:
        return CurvaturePack(**base, cotton=cotton(L), cotton_york=cotton_york(L))
    W = weyl(L)
    return CurvaturePack(**base, weyl=W, w6=bivector_matrix(W))

