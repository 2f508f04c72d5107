import os
import sys
import unittest
from fractions import Fraction as F

import numpy as np
import pytest

# Add the project root to the Python path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from ckf.conditions import differential_checks, lcw_conditions
from ckf.families import (
    FAMILY_ORBIT,
    LcwFamily,
    exact_gradient,
    lcw_potential,
    orbit_class,
    potential_evaluate,
    psi_evaluate,
    reduce_to_family,
    verify_correspondence,
)
from ckf.fields import CkField, ck_defect_numeric, conformal_killing_selftest, evaluate
from ckf.moves import (
    Dilation,
    Inversion,
    Rotation,
    Scalar,
    Translation,
    act,
    apply_chain,
    chain_inverse,
    rotation_from_skew,
    transported_value,
)
from ratmath import linalg
from tests import generators
from utils.errors import DomainError, NonSkewError, NotLcwError, ValidationError, ZeroFieldError

E = [linalg.basis_vector(3, i) for i in range(3)]
ZERO3 = linalg.zeros(3)
ZERO33 = linalg.zero_matrix(3)


def field(alpha=ZERO3, c=0, B=ZERO33, gamma=ZERO3):
    return CkField(alpha, c, B, gamma)


class TestCkField(unittest.TestCase):
    """Parameter tuples, evaluation and the conformal Killing self-test."""

    def test_evaluate_special_conformal(self):
        """X = (e0, 0, 0, 0) at x = e1 gives -1/2 e0."""
        X = CkField(linalg.basis_vector(4, 0), 0, linalg.zero_matrix(4), linalg.zeros(4))
        self.assertEqual(evaluate(X, linalg.basis_vector(4, 1)), (F(-1, 2), 0, 0, 0))

    def test_selftest_dilation(self):
        result = conformal_killing_selftest(field(c=1))
        self.assertTrue(result.passes)
        self.assertEqual(result.constant, 2)
        self.assertEqual(result.linear, (0, 0, 0))

    def test_selftest_special_conformal(self):
        result = conformal_killing_selftest(field(alpha=E[0]))
        self.assertTrue(result.passes)
        self.assertEqual(result.linear, (2, 0, 0))
        self.assertEqual(result.constant, 0)

    def test_validation(self):
        with self.assertRaises(NonSkewError):
            field(B=((0, 1, 0), (1, 0, 0), (0, 0, 0)))
        with self.assertRaises(ZeroFieldError):
            field()
        with self.assertRaises(ValidationError):
            CkField((1, 0), 0, ((0, 0), (0, 0)), (0, 0))

    def test_numeric_defect(self):
        rng = generators.seeded(7)
        for _ in range(20):
            X = CkField(generators.vector(rng, 3), generators.rational(rng), generators.skew(rng, 3),
                        generators.nonzero_vector(rng, 3))
            point = np.array([rng.uniform(-2, 2) for _ in range(3)])
            self.assertLessEqual(ck_defect_numeric(X, point), 1e-6)


class TestMoves(unittest.TestCase):
    """Conformal moves acting on parameter tuples."""

    def test_inversion_involution(self):
        rng = generators.seeded(11)
        for _ in range(50):
            X = CkField(generators.vector(rng, 3), generators.rational(rng), generators.skew(rng, 3),
                        generators.nonzero_vector(rng, 3))
            self.assertEqual(act(act(X, Inversion()), Inversion()), X)

    def test_inversion_formula(self):
        X = field(alpha=E[0], c=2, B=linalg.wedge_matrix(E[0], E[1]), gamma=E[2])
        self.assertEqual(act(X, Inversion()), field(alpha=linalg.scale(-2, E[2]), c=-2,
                                                    B=linalg.wedge_matrix(E[0], E[1]),
                                                    gamma=linalg.scale(F(-1, 2), E[0])))

    def test_translation_composition(self):
        rng = generators.seeded(12)
        for _ in range(50):
            X = CkField(generators.vector(rng, 3), generators.rational(rng), generators.skew(rng, 3),
                        generators.nonzero_vector(rng, 3))
            a, b = generators.vector(rng, 3), generators.vector(rng, 3)
            composed = act(act(X, Translation(a)), Translation(b))
            self.assertEqual(composed, act(X, Translation(linalg.add(a, b))))

    def test_moves_match_pointwise_transport(self):
        """act(X, F) is the field x -> kappa(x) DF(x)^T X(F(x)) for every move."""
        rng = generators.seeded(13)
        for _ in range(40):
            X = CkField(generators.vector(rng, 3), generators.rational(rng), generators.skew(rng, 3),
                        generators.nonzero_vector(rng, 3))
            for move in generators.move_chain(rng, max_length=3, inversions=True):
                x = generators.nonzero_vector(rng, 3)
                self.assertEqual(transported_value(move, X, x), evaluate(act(X, move), x))

    def test_chain_inverse(self):
        rng = generators.seeded(14)
        X = field(c=1, gamma=E[1])
        chain = generators.move_chain(rng, max_length=6)
        self.assertEqual(apply_chain(apply_chain(X, chain), chain_inverse(chain)), X)

    def test_rotation_requires_orthogonal(self):
        with self.assertRaises(ValidationError):
            Rotation(((1, 1, 0), (0, 1, 0), (0, 0, 1)))
        R = rotation_from_skew(((0, F(1, 2), 0), (F(-1, 2), 0, 0), (0, 0, 0)))
        self.assertEqual(linalg.mat_mul(linalg.transpose(R), R), linalg.identity(3))

    def test_degenerate_moves_rejected(self):
        with self.assertRaises(ValidationError):
            Dilation(0)
        with self.assertRaises(ValidationError):
            Scalar(0)


class TestConditions(unittest.TestCase):
    """Algebraic LCW conditions and their pointwise differential counterparts."""

    def test_invalid_tuple(self):
        X = field(c=1, B=linalg.wedge_matrix(E[0], E[1]))
        self.assertFalse(lcw_conditions(X).passed)
        checks = differential_checks(X, [E[2]])
        self.assertFalse(checks.eq1)
        self.assertFalse(checks.passed)

    def test_canonical_families_pass(self):
        rng = generators.seeded(21)
        for _ in range(30):
            family = generators.canonical_family(rng)
            self.assertTrue(lcw_conditions(family.canonical_tuple()).passed)

    def test_zero_sample_rejected(self):
        with self.assertRaises(ZeroFieldError):
            differential_checks(field(c=1), [ZERO3])


def _mixed_fields(rng, count):
    """Alternating LCW-valid tuples (moved canonical families) and unconstrained random tuples."""
    fields = []
    for i in range(count):
        if i % 2 == 0:
            fields.append(apply_chain(generators.canonical_family(rng).canonical_tuple(),
                                      generators.move_chain(rng, inversions=True)))
        else:
            fields.append(CkField(generators.vector(rng, 3), generators.rational(rng), generators.skew(rng, 3),
                                  generators.nonzero_vector(rng, 3)))
    return fields


@pytest.mark.parametrize("kind", ["translation", "rotation", "dilation", "inversion"])
def test_moves_preserve_lcw_verdict(kind):
    rng = generators.seeded(33)
    verdicts = []
    for X in _mixed_fields(rng, 200):
        if kind == "translation":
            move = Translation(generators.vector(rng, 3))
        elif kind == "rotation":
            move = Rotation(rotation_from_skew(generators.skew(rng, 3)))
        elif kind == "dilation":
            move = Dilation(generators.nonzero_rational(rng))
        else:
            move = Inversion()
        before = lcw_conditions(X).passed
        assert lcw_conditions(act(X, move)).passed == before
        verdicts.append(before)
    assert any(verdicts) and not all(verdicts)


def _samples(rng, X, count):
    points = []
    while len(points) < count:
        x = generators.vector(rng, 3)
        if not linalg.is_zero(evaluate(X, x)):
            points.append(x)
    return points


def test_differential_identities_hold_on_valid_tuples():
    """All three identities hold exactly at rational points for LCW-valid tuples."""
    rng = generators.seeded(31)
    for _ in range(200):
        X = apply_chain(generators.canonical_family(rng).canonical_tuple(),
                        generators.move_chain(rng, inversions=True))
        checks = differential_checks(X, _samples(rng, X, 5))
        assert checks.passed


def test_differential_identities_fail_on_invalid_tuples():
    rng = generators.seeded(32)
    found = 0
    while found < 200:
        X = CkField(generators.vector(rng, 3), generators.rational(rng), generators.skew(rng, 3),
                    generators.nonzero_vector(rng, 3))
        if lcw_conditions(X).passed:
            continue
        found += 1
        assert not differential_checks(X, _samples(rng, X, 5)).passed


class TestReduction(unittest.TestCase):
    """Reduction to the six families and the three orbits."""

    def test_dilation_field(self):
        X = CkField(linalg.zeros(4), 1, linalg.zero_matrix(4), linalg.zeros(4))
        family, chain = reduce_to_family(X)
        self.assertEqual(family.family, 2)
        self.assertEqual(family.orbit, 2)
        self.assertEqual(chain, [])

    def test_not_lcw(self):
        with self.assertRaises(NotLcwError):
            reduce_to_family(field(c=1, B=linalg.wedge_matrix(E[0], E[1])))

    def test_random_round_trips(self):
        """Canonical tuple, random rational chain, reduction: the family and orbit come back."""
        rng = generators.seeded(41)
        for _ in range(1000):
            family = generators.canonical_family(rng)
            X = apply_chain(family.canonical_tuple(), generators.move_chain(rng))
            found, chain = reduce_to_family(X)
            self.assertEqual(found.family, family.family)
            self.assertEqual(found.orbit, family.orbit)
            self.assertEqual(apply_chain(X, chain), found.canonical_tuple())

    def test_orbits_survive_inversion(self):
        rng = generators.seeded(42)
        for _ in range(200):
            family = generators.canonical_family(rng)
            X = apply_chain(family.canonical_tuple(), generators.move_chain(rng, inversions=True))
            self.assertEqual(orbit_class(X), family.orbit)

    def test_inversion_swaps_linear_families(self):
        self.assertEqual(reduce_to_family(act(field(gamma=E[0]), Inversion()))[0].family, 4)
        self.assertEqual(FAMILY_ORBIT[1], FAMILY_ORBIT[4])

    def test_potential_shift(self):
        X = act(field(c=1), Translation((1, 2, 3)))
        potential = lcw_potential(X)
        self.assertEqual(potential.family.family, 2)
        self.assertEqual(potential.shift, (-1, -2, -3))
        x = np.array([0.5, 1.0, -2.0])
        self.assertAlmostEqual(potential_evaluate(potential, x), np.log(np.linalg.norm(x + [-1, -2, -3])))


CANONICAL = [
    LcwFamily(1, 3, gamma=E[0]),
    LcwFamily(2, 3),
    LcwFamily(3, 3, gamma=E[0], sigma=E[1]),
    LcwFamily(4, 3, gamma=E[0]),
    LcwFamily(5, 3, gamma=E[0], s=1),
    LcwFamily(6, 3, gamma=E[0], s=1),
]

POINTS = [
    (1, 2, 3), (2, -1, F(1, 2)), (F(-1, 3), 1, 2), (3, F(1, 4), -2), (-2, 3, 1),
    (F(1, 2), F(3, 2), F(-5, 2)), (4, 1, -1), (-1, -2, F(1, 3)), (F(5, 2), -3, 2), (1, 1, 1),
]


@pytest.mark.parametrize("family", CANONICAL, ids=lambda f: f"family-{f.family}")
def test_correspondence_exact(family):
    result = verify_correspondence(family, POINTS)
    assert result.exact
    assert result.checked + result.skipped == len(POINTS)
    assert result.checked >= 5
    assert result.max_residual == 0.0


@pytest.mark.parametrize("family", CANONICAL, ids=lambda f: f"family-{f.family}")
def test_correspondence_finite_difference(family):
    result = verify_correspondence(family, POINTS, method="finite_difference")
    assert not result.exact
    assert result.max_residual <= 1e-6


def test_correspondence_through_potential():
    rng = generators.seeded(51)
    for _ in range(30):
        X = apply_chain(generators.canonical_family(rng).canonical_tuple(), generators.move_chain(rng))
        result = verify_correspondence(lcw_potential(X), POINTS)
        assert result.max_residual == 0.0


def test_singular_points():
    with pytest.raises(DomainError):
        exact_gradient(LcwFamily(2, 3), (0, 0, 0))
    with pytest.raises(DomainError):
        psi_evaluate(LcwFamily(5, 3, gamma=E[0], s=1), np.array([1.0, 0.0, 0.0]))


def test_family_validation():
    with pytest.raises(ValidationError):
        LcwFamily(3, 3, gamma=E[0], sigma=E[0])
    with pytest.raises(ValidationError):
        LcwFamily(5, 3, gamma=E[0], s=0)
    with pytest.raises(ValidationError):
        LcwFamily(7, 3, gamma=E[0])


if __name__ == '__main__':
    unittest.main()
