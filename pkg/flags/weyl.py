"""Eigenflag directions of a four-dimensional Weyl tensor and the A/B/C/D classification."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt

import numpy as np
import sympy
from scipy.stats import norm, qmc

from flags.cotton_york import FlagCertificate
from liealg.curvature import BIVECTOR_BASIS, WEYL_SYMMETRIES, bivector_matrix
from ratmath import linalg
from ratmath.eigen import rationalize_direction
from ratmath.rational import from_sympy, to_sympy
from utils.config import (
    DESCENT_FD_STEP,
    DESCENT_MAX_ITERATIONS,
    DESCENT_STARTS,
    DESCENT_STOP_DEFECT,
    EIGEN_GAP,
    MAX_DENOMINATOR,
    NO_FLAG_FLOOR,
    WORKERS,
)
from utils.errors import DimensionMismatchError, NotWeylError, ValidationError
from utils.logging import logger

TYPE_B_PATTERN = (2, 2, 2)
TYPE_C_PATTERN = (4, 2)
UNIT_TOL = 1e-9
SAME_DIRECTION_TOL = 1e-6


@dataclass(frozen=True)
class PlaneCertificate:
    """A 2-plane made of eigenflag directions, checked on sampled in-plane and mixed directions."""

    basis: tuple
    mode: str
    in_plane_checked: int
    mixed_checked: int


@dataclass(frozen=True)
class DescentRun:
    index: int
    direction: tuple
    defect: float
    iterations: int


@dataclass(frozen=True)
class DescentStats:
    starts: int
    below_floor: int
    converged: int
    min_defect: float
    max_defect: float
    floor: float


@dataclass(frozen=True)
class WeylType:
    """Classification verdict.

    ``eigenvalues`` pairs each distinct eigenvalue of the bivector operator
    (Fraction when rational, float otherwise) with its exact multiplicity.
    """

    tag: str
    multiplicities: tuple
    eigenvalues: tuple
    certificates: tuple = ()
    planes: tuple = ()
    stats: DescentStats | None = None
    note: str = ""


@lru_cache(maxsize=64)
def _require_weyl(W):
    if (W.rank, W.dim) != (4, 4):
        raise DimensionMismatchError("Weyl tensors here are rank-4 tables over dimension 4")
    failed = W.check_symmetries(WEYL_SYMMETRIES)
    if failed:
        raise NotWeylError(f"Table lacks Weyl symmetries: {failed}")
    return bivector_matrix(W)


def wedge6(v, w):
    """Coordinates of v∧w in the basis e0∧e1, e0∧e2, e0∧e3, e1∧e2, e1∧e3, e2∧e3."""
    return tuple(v[a] * w[b] - v[b] * w[a] for a, b in BIVECTOR_BASIS)


def eigenflag_check_4d(W, v):
    """Exact test of W(v∧v^⊥) ⊆ v∧v^⊥ by a rank computation."""
    W6 = _require_weyl(W)
    v = linalg.vector(v)
    if len(v) != 4:
        raise DimensionMismatchError("Direction must be four-dimensional")
    if linalg.is_zero(v):
        raise ValidationError("Eigenflag direction must be nonzero")
    bivectors = [wedge6(v, w) for w in linalg.orthogonal_complement([v], 4)]
    images = [linalg.mat_vec(W6, b) for b in bivectors]
    return linalg.rank(bivectors + images) == 3


def _float_w6(W6):
    return np.array([linalg.to_float(row) for row in W6])


def _defect(w6, v):
    # projector onto v∧v^⊥ is M Mᵀ for unit v, M the map u ↦ v∧u
    m = np.zeros((6, 4))
    for r, (a, b) in enumerate(BIVECTOR_BASIS):
        m[r, b] += v[a]
        m[r, a] -= v[b]
    p = m @ m.T
    residual = (np.eye(6) - p) @ w6 @ p
    return float(np.sum(residual * residual))


def flag_defect_4d(W, v):
    """Squared norm of the part of W(v∧v^⊥) leaving v∧v^⊥, for a unit float vector v."""
    W6 = _require_weyl(W)
    v = np.asarray(v, dtype=float)
    if v.shape != (4,):
        raise DimensionMismatchError("Direction must be four-dimensional")
    if abs(float(np.linalg.norm(v)) - 1.0) > UNIT_TOL:
        raise ValidationError("flag_defect_4d expects a unit vector")
    return _defect(_float_w6(W6), v)


def sphere_starts(count):
    """Deterministic quasi-random points on the unit 3-sphere.

    Unscrambled Halton points are mapped through the normal quantile and normalized.
    """
    sampler = qmc.Halton(d=4, scramble=False)
    sampler.fast_forward(1)
    points = np.clip(sampler.random(count), 1e-12, 1 - 1e-12)
    gauss = norm.ppf(points)
    return gauss / np.linalg.norm(gauss, axis=1, keepdims=True)


def _unit(x):
    return x / np.linalg.norm(x)


def _fd_gradient(w6, x, h):
    grad = np.zeros(4)
    for k in range(4):
        step = np.zeros(4)
        step[k] = h
        grad[k] = (_defect(w6, _unit(x + step)) - _defect(w6, _unit(x - step))) / (2 * h)
    return grad


def _descend(job):
    """Projected gradient descent with backtracking from one start."""
    index, start, w6 = job
    x = _unit(np.asarray(start, dtype=float))
    f = _defect(w6, x)
    step = 1.0
    iterations = 0
    while iterations < DESCENT_MAX_ITERATIONS and f >= DESCENT_STOP_DEFECT:
        iterations += 1
        grad = _fd_gradient(w6, x, DESCENT_FD_STEP)
        grad = grad - (grad @ x) * x
        slope = float(grad @ grad)
        if slope == 0.0:
            break
        accepted = False
        while step > 1e-16:
            trial = _unit(x - step * grad)
            f_trial = _defect(w6, trial)
            if f_trial <= f - 1e-4 * step * slope:
                accepted = True
                break
            step *= 0.5
        if not accepted:
            break
        x, f = trial, f_trial
        step = min(step * 2.0, 1e6)
    return DescentRun(index, tuple(float(a) for a in x), f, iterations)


def run_descent(W6, starts=DESCENT_STARTS, workers=WORKERS):
    """Run the multi-start search; results come back ordered by start index."""
    w6 = _float_w6(W6)
    jobs = [(i, tuple(p), w6) for i, p in enumerate(sphere_starts(starts))]
    if workers <= 1:
        runs = [_descend(job) for job in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            runs = list(pool.map(_descend, jobs))
    runs.sort(key=lambda run: run.index)
    return runs


def _stats(runs):
    defects = [run.defect for run in runs]
    return DescentStats(
        starts=len(runs),
        below_floor=sum(d <= NO_FLAG_FLOOR for d in defects),
        converged=sum(d < DESCENT_STOP_DEFECT for d in defects),
        min_defect=min(defects),
        max_defect=max(defects),
        floor=NO_FLAG_FLOOR,
    )


def weyl_spectrum(W6):
    """Distinct eigenvalues of W6 with exact multiplicities, from the factored characteristic polynomial over Q."""
    x = sympy.Symbol("x")
    m = sympy.Matrix([[to_sympy(a) for a in row] for row in W6])
    _, factors = sympy.factor_list(m.charpoly(x).as_expr(), x)
    spectrum = []
    for factor, exponent in factors:
        poly = sympy.Poly(factor, x)
        if poly.degree() == 1:
            a, b = poly.all_coeffs()
            spectrum.append((from_sympy(-b / a), int(exponent)))
        else:
            for root in poly.nroots(n=30):
                spectrum.append((float(sympy.re(root)), int(exponent)))
    spectrum.sort(key=lambda item: float(item[0]))
    return tuple(spectrum)


def _smallest_gap(spectrum):
    values = [float(v) for v, _ in spectrum]
    gaps = [b - a for a, b in zip(values, values[1:])]
    return min(gaps) if gaps else None


def _pfaffian(w):
    return w[0] * w[5] - w[1] * w[4] + w[2] * w[3]


def _plane_of(bivector):
    """Integer basis of the 2-plane of a simple bivector (row space of its skew matrix)."""
    omega = [[Fraction(0)] * 4 for _ in range(4)]
    for value, (a, b) in zip(bivector, BIVECTOR_BASIS):
        omega[a][b] = value
        omega[b][a] = -value
    basis = []
    for row in omega:
        if any(row) and linalg.rank(basis + [tuple(row)]) > len(basis):
            basis.append(tuple(row))
    return tuple(sorted((linalg.integer_direction(v) for v in basis), key=lambda v: tuple(-a for a in v)))


def _simple_bivectors(eigenspace):
    """Simple bivectors in a 2-dim eigenspace: roots of the Pfaffian quadratic s²A + stB + t²C."""
    w1, w2 = eigenspace
    A, C = _pfaffian(w1), _pfaffian(w2)
    B = _pfaffian(linalg.add(w1, w2)) - A - C
    if A == 0 and B == 0 and C == 0:
        return None, "every bivector in the eigenspace is simple"
    if A == 0:
        pairs = [(Fraction(1), Fraction(0)), (C, -B)]
    else:
        disc = B * B - 4 * A * C
        if disc < 0:
            return [], "the 2-dimensional eigenspace holds no simple bivector"
        num, den = disc.numerator, disc.denominator
        root_num, root_den = isqrt(num), isqrt(den)
        if root_num * root_num != num or root_den * root_den != den:
            return None, "the eigenflag planes are irrational"
        root = Fraction(root_num, root_den)
        pairs = [((-B + root) / (2 * A), Fraction(1)), ((-B - root) / (2 * A), Fraction(1))]
    bivectors = [linalg.add(linalg.scale(s, w1), linalg.scale(t, w2)) for s, t in pairs]
    if len(set(linalg.integer_direction(b) for b in bivectors)) < 2:
        return None, "the Pfaffian quadratic has a double root"
    return bivectors, ""


def _type_c_planes(W, W6, spectrum):
    """Exact eigenflag planes for a {4, 2} operator, verified on sampled directions."""
    value = next((v for v, mult in spectrum if mult == 2), None)
    if not isinstance(value, Fraction):
        return (), "the simple eigenvalue of the {4, 2} operator is not rational"
    shifted = linalg.mat_sub(W6, linalg.mat_scale(value, linalg.identity(6)))
    eigenspace = linalg.nullspace(shifted)
    bivectors, reason = _simple_bivectors(eigenspace)
    if not bivectors:
        return (), reason
    planes = [_plane_of(b) for b in bivectors]
    certificates = []
    for mine, other in ((planes[0], planes[1]), (planes[1], planes[0])):
        p1, p2 = mine
        inside = [p1, p2, linalg.add(p1, p2), linalg.sub(p1, linalg.scale(2, p2))]
        mixed = [linalg.add(p1, other[0]), linalg.add(p2, other[1]), linalg.add(linalg.add(p1, p2), other[0])]
        if not all(eigenflag_check_4d(W, v) for v in inside):
            return (), "sampled in-plane directions are not eigenflags"
        if any(eigenflag_check_4d(W, v) for v in mixed):
            return (), "sampled mixed directions are eigenflags"
        certificates.append(PlaneCertificate(mine, "exact", len(inside), len(mixed)))
    certificates.sort(key=lambda c: tuple(-a for a in c.basis[0]))
    return tuple(certificates), ""


def _frame_flags(W):
    found = []
    for i in range(4):
        e = linalg.basis_vector(4, i)
        if eigenflag_check_4d(W, e):
            found.append(FlagCertificate(e, "exact", Fraction(0)))
    return found


def _same_direction(u, v):
    u = np.asarray([float(a) for a in u])
    v = np.asarray([float(a) for a in v])
    return abs(float(u @ v)) / (np.linalg.norm(u) * np.linalg.norm(v)) > 1 - SAME_DIRECTION_TOL


def _candidate_flags(W, runs, known, max_denominator):
    found = list(known)
    for run in runs:
        if run.defect > NO_FLAG_FLOOR:
            continue
        if any(_same_direction(c.direction, run.direction) for c in found):
            continue
        rounded = rationalize_direction(run.direction, max_denominator)
        if rounded is not None and eigenflag_check_4d(W, rounded):
            found.append(FlagCertificate(rounded, "exact", Fraction(0)))
        else:
            found.append(FlagCertificate(run.direction, "numeric", run.defect))
    return found


def _sorted(certificates):
    return tuple(sorted(certificates, key=lambda c: (not c.exact, tuple(-float(a) for a in c.direction))))


def _type_b_note(certificates):
    found = len(certificates)
    exact = sum(c.exact for c in certificates)
    counted = "exactly four" if found == 4 else f"{found} of four"
    return f"{counted} eigenflag directions found; {exact} certified exactly, {found - exact} numeric"


def weyl_type(W, starts=DESCENT_STARTS, workers=WORKERS, max_denominator=MAX_DENOMINATOR):
    """Classify a Weyl tensor as type A, B, C or D.

    Args:
    ----
        W (TensorTable): Rank-4 Weyl table over dimension 4.
        starts (int): Number of descent starts on the unit sphere.
        workers (int): Process count for the descent fan-out.
        max_denominator (int): Bound used when rounding descent minimizers.

    Returns:
    -------
        WeylType: The verdict with multiplicities, certificates and, when the
        search ran, its statistics. Type A is a numeric verdict.

    """
    W6 = _require_weyl(W)
    if linalg.is_zero_matrix(W6):
        return WeylType("D", (6,), ((Fraction(0), 6),), note="W = 0; every direction is an eigenflag")

    spectrum = weyl_spectrum(W6)
    multiplicities = tuple(sorted((mult for _, mult in spectrum), reverse=True))
    gap = _smallest_gap(spectrum)
    if gap is not None and gap < EIGEN_GAP:
        logger.warning(f"Weyl eigenvalues closer than {EIGEN_GAP:g}: gap {gap:.3e}")
        return WeylType("inconclusive", multiplicities, spectrum, note=f"eigenvalue gap {gap:.3e} below {EIGEN_GAP:g}")

    frame = _frame_flags(W)
    if multiplicities == TYPE_B_PATTERN and len(frame) == 4:
        return WeylType(
            "B", multiplicities, spectrum, _sorted(frame),
            note="exactly four eigenflag directions; all four certified exactly, search skipped",
        )
    planes, plane_note = ((), "")
    if multiplicities == TYPE_C_PATTERN:
        planes, plane_note = _type_c_planes(W, W6, spectrum)
        if planes:
            return WeylType(
                "C", multiplicities, spectrum, _sorted(frame), planes,
                note="eigenflags form the union of two orthogonal 2-planes; search skipped",
            )

    runs = run_descent(W6, starts=starts, workers=workers)
    stats = _stats(runs)
    logger.info(
        f"Eigenflag search: {stats.starts} starts, {stats.below_floor} below floor, "
        f"min defect {stats.min_defect:.3e}"
    )
    certificates = _sorted(_candidate_flags(W, runs, frame, max_denominator))

    if not certificates:
        note = f"no eigenflag found: all {stats.starts} descents ended above {NO_FLAG_FLOOR:g} (numeric verdict)"
        if multiplicities not in (TYPE_B_PATTERN, TYPE_C_PATTERN):
            note += "; the eigenvalue multiplicities also exclude eigenflags"
        return WeylType("A", multiplicities, spectrum, stats=stats, note=note)
    if multiplicities == TYPE_B_PATTERN:
        return WeylType("B", multiplicities, spectrum, certificates, stats=stats, note=_type_b_note(certificates))
    if multiplicities == TYPE_C_PATTERN:
        return WeylType(
            "C", multiplicities, spectrum, certificates, stats=stats,
            note=f"eigenflags form two orthogonal 2-planes; planes not certified exactly ({plane_note})",
        )
    logger.warning(f"Eigenflags found although the multiplicities are {multiplicities}")
    return WeylType(
        "inconclusive", multiplicities, spectrum, certificates, stats=stats,
        note=f"eigenflag candidates found but multiplicities {multiplicities} match neither B nor C",
    )
