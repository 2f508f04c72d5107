"""Left-invariant distributions: second fundamental form, integrability, umbilicity.

Matrices are stored in Weingarten form, M^(z)_ab = g(∇_{X_a} z, X_b) = −g(∇_{X_a} X_b, z).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from flags.cotton_york import perp_basis_3d
from liealg.curvature import covariant
from ratmath import linalg
from ratmath.rational import format_rational
from utils.errors import DimensionMismatchError, ValidationError


def _orthogonalize(vectors):
    """Exact Gram-Schmidt without normalization, each result scaled to an integer direction."""
    out = []
    for v in vectors:
        w = v
        for u in out:
            w = linalg.sub(w, linalg.scale(linalg.dot(w, u) / linalg.norm_sq(u), u))
        if not linalg.is_zero(w):
            out.append(linalg.integer_direction(w))
    return out


def _fmt(v):
    terms = []
    for i, a in enumerate(v):
        if a == 0:
            continue
        coeff = "" if a == 1 else ("-" if a == -1 else format_rational(a))
        terms.append(f"{coeff}e{i}")
    return " + ".join(terms).replace("+ -", "- ") if terms else "0"


@dataclass(frozen=True)
class Distribution:
    """A constant-coefficient subframe: tangent vectors spanning D and a basis of D^⊥."""

    tangent: tuple
    normal: tuple
    name: str = ""

    def __post_init__(self):
        tangent = tuple(linalg.vector(v) for v in self.tangent)
        normal = tuple(linalg.vector(v) for v in self.normal)
        if not tangent or not normal:
            raise ValidationError("A distribution needs at least one tangent and one normal vector")
        n = len(tangent[0])
        if any(len(v) != n for v in tangent + normal):
            raise DimensionMismatchError("Frame vectors of a distribution must share one dimension")
        if any(linalg.dot(x, z) != 0 for x in tangent for z in normal):
            raise ValidationError("Tangent and normal frames must be orthogonal")
        if linalg.rank(list(tangent + normal)) != n or len(tangent) + len(normal) != n:
            raise ValidationError("Tangent and normal frames must together form a basis")
        object.__setattr__(self, "tangent", tangent)
        object.__setattr__(self, "normal", normal)

    @property
    def dim(self):
        return len(self.tangent[0])

    def gram(self):
        return tuple(tuple(linalg.dot(a, b) for b in self.tangent) for a in self.tangent)

    def describe(self):
        label = self.name or "D"
        return f"{label} = span({', '.join(_fmt(v) for v in self.tangent)})"


@dataclass(frozen=True)
class IntegrabilityWitness:
    """[X_a, X_b] has normal component ``normal_component`` along normal vector ``normal_index``."""

    a: int
    b: int
    bracket: tuple
    normal_index: int
    normal_component: Fraction


@dataclass(frozen=True)
class IntegrabilityResult:
    integrable: bool
    witness: IntegrabilityWitness | None = None


@dataclass(frozen=True)
class UmbilicViolation:
    normal_index: int
    a: int
    b: int
    value: Fraction
    expected: Fraction


@dataclass(frozen=True)
class UmbilicResult:
    umbilical: bool
    H: tuple | None = None
    violation: UmbilicViolation | None = None


def from_direction(v, name=""):
    """The distribution v^⊥ with an exact orthogonal integer tangent frame."""
    v = linalg.integer_direction(v)
    if len(v) == 3:
        tangent = [linalg.integer_direction(w) for w in perp_basis_3d(v)]
    else:
        tangent = _orthogonalize(linalg.orthogonal_complement([v], len(v)))
    return Distribution(tuple(tangent), (v,), name)


def plane(dim, indices, name=""):
    """The distribution spanned by the listed frame vectors."""
    indices = tuple(indices)
    if len(set(indices)) != len(indices) or any(not 0 <= i < dim for i in indices):
        raise ValidationError(f"Frame indices {indices} are not distinct indices below {dim}")
    tangent = tuple(linalg.basis_vector(dim, i) for i in indices)
    normal = tuple(linalg.basis_vector(dim, i) for i in range(dim) if i not in indices)
    return Distribution(tangent, normal, name)


def from_tangent(vectors, name=""):
    """The distribution spanned by arbitrary rational vectors, with an exact normal frame."""
    vectors = [linalg.vector(v) for v in vectors]
    if linalg.rank(vectors) != len(vectors):
        raise ValidationError("Tangent vectors must be linearly independent")
    normal = _orthogonalize(linalg.orthogonal_complement(vectors, len(vectors[0])))
    return Distribution(tuple(vectors), tuple(normal), name)


def _check(L, D):
    if L.dim != D.dim:
        raise DimensionMismatchError(f"Distribution of dimension {D.dim} over an algebra of dimension {L.dim}")


def second_fundamental_form(L, D):
    """One matrix M^(z) per normal frame vector z, M^(z)_ab = g(∇_{X_a} z, X_b)."""
    _check(L, D)
    forms = []
    for z in D.normal:
        derivatives = [covariant(L, x, z) for x in D.tangent]
        forms.append(tuple(tuple(linalg.dot(d, y) for y in D.tangent) for d in derivatives))
    return tuple(forms)


def is_integrable(L, D):
    """Integrable iff every M^(z) is symmetric; otherwise report the bracket leaving D."""
    forms = second_fundamental_form(L, D)
    k = len(D.tangent)
    for a in range(k):
        for b in range(a + 1, k):
            for index, M in enumerate(forms):
                if M[a][b] != M[b][a]:
                    bracket = L.bracket(D.tangent[a], D.tangent[b])
                    z = D.normal[index]
                    return IntegrabilityResult(
                        False,
                        IntegrabilityWitness(a, b, bracket, index, linalg.dot(bracket, z) / linalg.norm_sq(z)),
                    )
    return IntegrabilityResult(True)


def is_umbilical(L, D):
    """Umbilical iff M^(z) = h_z G for every normal z; H ∈ D^⊥ then solves g(z, H) = −h_z."""
    forms = second_fundamental_form(L, D)
    G = D.gram()
    k = len(D.tangent)
    h = []
    for index, M in enumerate(forms):
        h_z = M[0][0] / G[0][0]
        for a in range(k):
            for b in range(k):
                expected = h_z * G[a][b]
                if M[a][b] != expected:
                    return UmbilicResult(False, violation=UmbilicViolation(index, a, b, M[a][b], expected))
        h.append(h_z)
    normal_gram = tuple(tuple(linalg.dot(u, w) for w in D.normal) for u in D.normal)
    coeffs = linalg.solve(normal_gram, tuple(-x for x in h))
    H = linalg.zeros(D.dim)
    for c, z in zip(coeffs, D.normal):
        H = linalg.add(H, linalg.scale(c, z))
    return UmbilicResult(True, H=H)


def bracket_closure(L, D):
    """Direct check that every [X_a, X_b] lies in D."""
    _check(L, D)
    k = len(D.tangent)
    tangent = list(D.tangent)
    return all(
        linalg.in_span(tangent, L.bracket(tangent[a], tangent[b])) for a in range(k) for b in range(a + 1, k)
    )
