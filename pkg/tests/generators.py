"""Seeded random inputs shared by the property tests."""

import os
import random
import sys
from fractions import Fraction

# Add the project root to the Python path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from ckf.families import LcwFamily
from ckf.moves import Dilation, Inversion, Rotation, Scalar, Translation, rotation_from_skew
from liealg.algebra import diagonal_3d, load


def rational(rng, span=3, denominators=(1, 2, 3)):
    return Fraction(rng.randint(-span, span), rng.choice(denominators))


def nonzero_rational(rng, span=3, denominators=(1, 2, 3)):
    while True:
        q = rational(rng, span, denominators)
        if q != 0:
            return q


def vector(rng, n, span=3):
    return tuple(rational(rng, span) for _ in range(n))


def nonzero_vector(rng, n, span=3):
    while True:
        v = vector(rng, n, span)
        if any(v):
            return v


def skew(rng, n, span=2):
    A = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            A[i][j] = rational(rng, span)
            A[j][i] = -A[i][j]
    return tuple(tuple(row) for row in A)


def jacobi_valid_algebra(rng):
    """A diagonal unimodular 3D algebra or a 4D semidirect product R ⋉ R³ ([e0, e_i] = A e_i)."""
    if rng.random() < 0.5:
        return diagonal_3d(*vector(rng, 3))
    A = [[rational(rng, 2) for _ in range(3)] for _ in range(3)]
    brackets = {(0, i + 1): {k + 1: A[k][i] for k in range(3) if A[k][i] != 0} for i in range(3)}
    return load(4, brackets)


def canonical_family(rng, n=3):
    family = rng.randint(1, 6)
    gamma = nonzero_vector(rng, n)
    if family == 2:
        return LcwFamily(2, n, a=nonzero_rational(rng))
    if family == 3:
        # sigma orthogonal to gamma
        while True:
            w = nonzero_vector(rng, n)
            sigma = tuple(w[k] - sum(a * b for a, b in zip(w, gamma)) / sum(a * a for a in gamma) * gamma[k]
                          for k in range(n))
            if any(sigma):
                return LcwFamily(3, n, gamma=gamma, sigma=sigma)
    if family in (5, 6):
        return LcwFamily(family, n, gamma=gamma, s=abs(nonzero_rational(rng)))
    return LcwFamily(family, n, gamma=gamma)


def move_chain(rng, n=3, max_length=6, inversions=False):
    """Random rational conformal moves; inversions only when requested since they change the family."""
    kinds = ["translation", "dilation", "rotation", "scalar"] + (["inversion"] if inversions else [])
    chain = []
    for _ in range(rng.randint(1, max_length)):
        kind = rng.choice(kinds)
        if kind == "translation":
            chain.append(Translation(vector(rng, n)))
        elif kind == "dilation":
            chain.append(Dilation(nonzero_rational(rng)))
        elif kind == "rotation":
            chain.append(Rotation(rotation_from_skew(skew(rng, n))))
        elif kind == "scalar":
            chain.append(Scalar(nonzero_rational(rng)))
        else:
            chain.append(Inversion())
    return chain


def seeded(seed=20241017):
    return random.Random(seed)
