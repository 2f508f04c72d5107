"""The six LCW families of Euclidean space, the reduction of a valid field to one of them, and the three orbits."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from ckf.conditions import lcw_conditions
from ckf.fields import CkField, evaluate, evaluate_float
from ckf.moves import Translation, apply_chain
from ratmath import linalg
from ratmath.rational import format_rational
from utils.errors import DomainError, NotLcwError, ReductionError, ValidationError
from utils.logging import logger

FAMILY_ORBIT = {1: 1, 4: 1, 2: 2, 6: 2, 3: 3, 5: 3}

FAMILY_NAMES = {
    1: "linear",
    2: "logarithm",
    3: "angle",
    4: "inverted linear",
    5: "arctan",
    6: "arctanh",
}

# points closer than this to a singular locus are rejected by the float evaluators
SINGULAR_TOL = 1e-12


@dataclass(frozen=True)
class LcwFamily:
    """One of the six weights ψ, postcomposed with x ↦ a·x + b.

    gamma is the direction data of families 1 and 3 to 6, sigma the second
    direction of family 3, s the sphere parameter of families 5 and 6.
    """

    family: int
    dim: int
    gamma: tuple = None
    sigma: tuple = None
    s: Fraction = None
    a: Fraction = Fraction(1)
    b: Fraction = Fraction(0)

    def __post_init__(self):
        if self.family not in FAMILY_ORBIT:
            raise ValidationError(f"Unknown LCW family {self.family}")
        a, b = Fraction(self.a), Fraction(self.b)
        if a == 0:
            raise ValidationError("Affine postcomposition needs a != 0")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        if self.family != 2:
            if self.gamma is None or linalg.is_zero(self.gamma) or len(self.gamma) != self.dim:
                raise ValidationError(f"Family {self.family} needs a nonzero gamma of dimension {self.dim}")
            object.__setattr__(self, "gamma", linalg.vector(self.gamma))
        if self.family == 3:
            if self.sigma is None or linalg.is_zero(self.sigma) or linalg.dot(self.gamma, self.sigma) != 0:
                raise ValidationError("Family 3 needs a nonzero sigma orthogonal to gamma")
            object.__setattr__(self, "sigma", linalg.vector(self.sigma))
        if self.family in (5, 6):
            if self.s is None or Fraction(self.s) <= 0:
                raise ValidationError(f"Family {self.family} needs s > 0")
            object.__setattr__(self, "s", Fraction(self.s))

    @property
    def orbit(self):
        return FAMILY_ORBIT[self.family]

    @property
    def scale_sq(self):
        """|γ|²|σ|², the square of the family-3 normalizing scale."""
        if self.family != 3:
            return None
        return linalg.norm_sq(self.gamma) * linalg.norm_sq(self.sigma)

    def base_tuple(self):
        n = self.dim
        zero_v, zero_m = linalg.zeros(n), linalg.zero_matrix(n)
        g = self.gamma
        if self.family == 1:
            return CkField(zero_v, 0, zero_m, g)
        if self.family == 2:
            return CkField(zero_v, 1, zero_m, zero_v)
        if self.family == 3:
            return CkField(zero_v, 0, linalg.wedge_matrix(g, self.sigma), zero_v)
        if self.family == 4:
            return CkField(g, 0, zero_m, zero_v)
        half_s = self.s / 2 if self.family == 5 else -self.s / 2
        return CkField(g, 0, zero_m, linalg.scale(half_s, g))

    def canonical_tuple(self):
        """The conformal Killing field of a·ψ + b, i.e. the base tuple scaled by 1/a."""
        base = self.base_tuple()
        return base if self.a == 1 else base.scaled(1 / self.a)

    def describe(self):
        def vec(v):
            return "(" + ", ".join(format_rational(x) for x in v) + ")"

        parts = [f"family {self.family} ({FAMILY_NAMES[self.family]})"]
        if self.gamma is not None:
            parts.append(f"gamma={vec(self.gamma)}")
        if self.sigma is not None:
            parts.append(f"sigma={vec(self.sigma)}")
        if self.s is not None:
            parts.append(f"s={format_rational(self.s)}")
        if self.a != 1 or self.b != 0:
            parts.append(f"a={format_rational(self.a)} b={format_rational(self.b)}")
        return " ".join(parts)


@dataclass(frozen=True)
class LcwPotential:
    """φ(x) = a·ψ(x + shift) + b for a field reduced by translations only."""

    family: LcwFamily
    shift: tuple
    chain: tuple = field(default=())


def _require_lcw(X):
    # necessary at every base point, not only at the origin
    if not lcw_conditions(X).passed:
        raise NotLcwError(f"Field fails the LCW conditions: {X.describe()}")


def _translate(X, x0, chain):
    if linalg.is_zero(x0):
        return X
    move = Translation(x0)
    chain.append(move)
    moved = apply_chain(X, [move])
    _require_lcw(moved)
    return moved


def _orthogonal_candidates(alpha):
    """Deterministic nonzero rational vectors orthogonal to alpha."""
    n = len(alpha)
    candidates = [linalg.basis_vector(n, i) for i in range(n) if alpha[i] == 0]
    for i in range(n):
        for j in range(i + 1, n):
            if alpha[i] != 0 or alpha[j] != 0:
                w = [Fraction(0)] * n
                w[j], w[i] = alpha[i], -alpha[j]
                candidates.append(tuple(w))
    return candidates


def _auxiliary_shift(X):
    """Translation y ⊥ α with −By − ½|y|²α ≠ 0, scanning k·w over candidate directions w."""
    for k in range(1, 64):
        for w in _orthogonal_candidates(X.alpha):
            y = linalg.scale(k, w)
            gamma = linalg.sub(linalg.scale(-linalg.norm_sq(y) / 2, X.alpha), linalg.mat_vec(X.B, y))
            if not linalg.is_zero(gamma):
                return y
    raise ReductionError("No auxiliary translation found")


def _reduce_without_alpha(X, chain):
    n = X.dim
    if linalg.is_zero_matrix(X.B):
        if X.c == 0:
            return X, LcwFamily(1, n, gamma=X.gamma)
        X = _translate(X, linalg.scale(1 / X.c, X.gamma), chain)
        return X, LcwFamily(2, n, a=1 / X.c)

    if linalg.is_zero(X.gamma):
        i = next(i for i in range(n) if not linalg.is_zero(linalg.mat_vec(X.B, linalg.basis_vector(n, i))))
        X = _translate(X, linalg.basis_vector(n, i, -1), chain)
    gamma = X.gamma
    sigma = linalg.scale(-1 / linalg.norm_sq(gamma), linalg.mat_vec(X.B, gamma))
    if linalg.wedge_matrix(gamma, sigma) != X.B:
        raise ReductionError("B is not of the form γ∧σ")
    X = _translate(X, linalg.scale(1 / linalg.norm_sq(sigma), sigma), chain)
    return X, LcwFamily(3, n, gamma=gamma, sigma=sigma)


def _reduce_with_alpha(X, chain):
    n = X.dim
    alpha = X.alpha
    alpha_sq = linalg.norm_sq(alpha)
    if X.c != 0:
        X = _translate(X, linalg.scale(X.c / alpha_sq, alpha), chain)
    if linalg.is_zero(X.gamma) and not linalg.is_zero_matrix(X.B):
        X = _translate(X, _auxiliary_shift(X), chain)

    r = linalg.dot(X.gamma, alpha) / alpha_sq
    if linalg.scale(r, alpha) != X.gamma:
        raise ReductionError("γ is not parallel to α after removing c")
    sigma = linalg.scale(-1 / alpha_sq, linalg.mat_vec(X.B, alpha))
    if linalg.wedge_matrix(alpha, sigma) != X.B:
        raise ReductionError("B is not of the form α∧σ")
    X = _translate(X, linalg.neg(sigma), chain)

    s_half = r + linalg.norm_sq(sigma) / 2
    if s_half > 0:
        return X, LcwFamily(5, n, gamma=alpha, s=2 * s_half)
    if s_half < 0:
        return X, LcwFamily(6, n, gamma=alpha, s=-2 * s_half)
    return X, LcwFamily(4, n, gamma=alpha)


def reduce_to_family(X):
    """Reduce an LCW-valid field to one of the six families by rational translations.

    Args:
    ----
        X (CkField): A field passing lcw_conditions.

    Returns:
    -------
        tuple: (LcwFamily, list of moves) such that applying the moves to X gives the family's canonical tuple.

    """
    _require_lcw(X)
    chain = []
    if linalg.is_zero(X.alpha):
        _, family = _reduce_without_alpha(X, chain)
    else:
        _, family = _reduce_with_alpha(X, chain)

    if apply_chain(X, chain) != family.canonical_tuple():
        raise ReductionError(f"Chain does not reproduce the canonical tuple of {family.describe()}")
    logger.debug(f"Reduced {X.describe()} to {family.describe()} with {len(chain)} move(s)")
    return family, chain


def orbit_class(X):
    family, _ = reduce_to_family(X)
    return family.orbit


def lcw_potential(X):
    family, chain = reduce_to_family(X)
    shift = linalg.zeros(X.dim)
    for move in chain:
        shift = linalg.add(shift, move.x0)
    return LcwPotential(family, shift, tuple(chain))


def _unit(v):
    v = np.asarray(linalg.to_float(v))
    return v / np.linalg.norm(v)


def _psi(f, x):
    if f.family == 2:
        r = float(np.linalg.norm(x))
        if r < SINGULAR_TOL:
            raise DomainError("log|x| is singular at the origin")
        return math.log(r)

    gamma = np.asarray(linalg.to_float(f.gamma))
    g_sq = float(gamma @ gamma)
    if f.family == 1:
        return float(gamma @ x) / g_sq
    if f.family == 3:
        u = float(_unit(f.gamma) @ x)
        v = float(_unit(f.sigma) @ x)
        if abs(v) < SINGULAR_TOL:
            raise DomainError("angle weight is singular on the plane σ·x = 0")
        return math.atan(u / v) / math.sqrt(float(f.scale_sq))
    if f.family == 4:
        r_sq = float(x @ x)
        if r_sq < SINGULAR_TOL:
            raise DomainError("inverted linear weight is singular at the origin")
        return -2.0 * float(gamma @ x) / (g_sq * r_sq)

    s = float(f.s)
    root_s = math.sqrt(s)
    u = -2.0 * float(_unit(f.gamma) @ x) / root_s
    if f.family == 5:
        v = float(x @ x) / s - 1.0
        if abs(v) < SINGULAR_TOL:
            raise DomainError("arctan weight is singular on the sphere |x|² = s")
        return math.atan(u / v) / (root_s * math.sqrt(g_sq))
    v = float(x @ x) / s + 1.0
    w = u / v
    if abs(w) >= 1.0 - SINGULAR_TOL:
        raise DomainError("arctanh weight is singular at x = ±√s·γ/|γ|")
    return math.atanh(w) / (root_s * math.sqrt(g_sq))


def psi_evaluate(f, x):
    """Float value of a·ψ(x) + b."""
    x = np.asarray(x, dtype=float)
    if x.shape != (f.dim,):
        raise ValidationError(f"Point must have dimension {f.dim}")
    return float(f.a) * _psi(f, x) + float(f.b)


def potential_evaluate(p, x):
    return psi_evaluate(p.family, np.asarray(x, dtype=float) + np.asarray(linalg.to_float(p.shift)))


def exact_gradient(f, x):
    """Exact ∇(a·ψ) at a rational point, from the closed forms of the six weights."""
    x = linalg.vector(x)
    n = f.dim
    if f.family == 2:
        r_sq = linalg.norm_sq(x)
        if r_sq == 0:
            raise DomainError("log|x| is singular at the origin")
        return linalg.scale(f.a / r_sq, x)

    gamma = f.gamma
    g_sq = linalg.norm_sq(gamma)
    gx = linalg.dot(gamma, x)
    if f.family == 1:
        grad = linalg.scale(1 / g_sq, gamma)
    elif f.family == 3:
        sigma = f.sigma
        s_sq = linalg.norm_sq(sigma)
        sx = linalg.dot(sigma, x)
        if sx == 0:
            raise DomainError("angle weight is singular on the plane σ·x = 0")
        denominator = f.scale_sq * (gx * gx / g_sq + sx * sx / s_sq)
        grad = linalg.scale(1 / denominator, linalg.mat_vec(linalg.wedge_matrix(gamma, sigma), x))
    elif f.family == 4:
        r_sq = linalg.norm_sq(x)
        if r_sq == 0:
            raise DomainError("inverted linear weight is singular at the origin")
        top = tuple(gamma[k] * r_sq - 2 * gx * x[k] for k in range(n))
        grad = linalg.scale(-2 / (g_sq * r_sq * r_sq), top)
    else:
        s = f.s
        u_sq = 4 * gx * gx / (g_sq * s)
        r_sq = linalg.norm_sq(x)
        if f.family == 5:
            v = r_sq / s - 1
            denominator = u_sq + v * v
        else:
            v = r_sq / s + 1
            denominator = v * v - u_sq
        if denominator == 0 or (f.family == 5 and v == 0):
            raise DomainError(f"family {f.family} weight is singular at {x}")
        top = tuple(-2 * v * gamma[k] + 4 * gx * x[k] / s for k in range(n))
        grad = linalg.scale(1 / (g_sq * s * denominator), top)
    return linalg.scale(f.a, grad)


def _fd_gradient(fn, x, step):
    x = np.asarray(x, dtype=float)
    grad = np.zeros_like(x)
    for j in range(len(x)):
        e = np.zeros_like(x)
        e[j] = step
        grad[j] = (fn(x + e) - fn(x - e)) / (2 * step)
    return grad


@dataclass(frozen=True)
class CorrespondenceResult:
    max_residual: float
    exact: bool
    checked: int
    skipped: int


def verify_correspondence(target, samples, method="auto", step=1e-5):
    """Compare |∇φ|⁻²∇φ with the conformal Killing field of the weight at sample points.

    ``target`` is an LcwFamily (compared with its canonical tuple) or an
    LcwPotential (compared with the field it was reduced from). Method
    "auto" compares exact rational closed forms; "finite_difference" uses
    central differences of the float weight at ``step``. Samples on a
    singular locus are skipped and counted.
    """
    if isinstance(target, LcwPotential):
        family, shift = target.family, target.shift
        field_tuple = apply_chain(family.canonical_tuple(), _inverse_translations(target.chain))
    else:
        family, shift = target, linalg.zeros(target.dim)
        field_tuple = family.canonical_tuple()

    worst, checked, skipped = 0.0, 0, 0
    for x in samples:
        x = linalg.vector(x)
        moved = linalg.add(x, shift)
        try:
            if method == "auto":
                grad = exact_gradient(family, moved)
                g_sq = linalg.norm_sq(grad)
                field_value = linalg.scale(1 / g_sq, grad)
                deviation = max(abs(a - b) for a, b in zip(field_value, evaluate(field_tuple, x)))
                residual = float(deviation)
            elif method == "finite_difference":
                grad = _fd_gradient(lambda y: psi_evaluate(family, y), linalg.to_float(moved), step)
                field_value = grad / float(grad @ grad)
                residual = float(np.max(np.abs(field_value - evaluate_float(field_tuple, linalg.to_float(x)))))
            else:
                raise ValidationError(f"Unknown correspondence method {method!r}")
        except DomainError:
            skipped += 1
            continue
        checked += 1
        worst = max(worst, residual)
    if skipped:
        logger.warning(f"verify_correspondence skipped {skipped} singular sample(s) for {family.describe()}")
    return CorrespondenceResult(worst, method == "auto", checked, skipped)


def _inverse_translations(chain):
    return [Translation(linalg.neg(m.x0)) for m in reversed(chain)]
