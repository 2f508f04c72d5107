import os
import sys
import unittest
from fractions import Fraction as F

import pytest

# Add the project root to the Python path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from cli.inputs import parse_input
from distributions.circle import CircleFamily, antipode_check, circle_obstruction, constant_entry
from distributions.distribution import (
    Distribution,
    bracket_closure,
    from_direction,
    from_tangent,
    is_integrable,
    is_umbilical,
    plane,
    second_fundamental_form,
)
from liealg.algebra import diagonal_3d, load
from ratmath import linalg
from tests import generators
from utils.config import FIXTURES_DIR
from utils.errors import DimensionMismatchError, ValidationError


def fixture(name, skip_jacobi=False):
    return parse_input(os.path.join(FIXTURES_DIR, name), skip_jacobi=skip_jacobi).payload


def e(n, i):
    return linalg.basis_vector(n, i)


class TestTypeBDistributions(unittest.TestCase):
    """e_i^⊥ for the four eigenflag directions of the type-B example."""

    @classmethod
    def setUpClass(cls):
        cls.L = fixture("type_b_4d.json")
        cls.D = [from_direction(e(4, i), f"D{i}") for i in range(4)]

    def test_second_fundamental_forms(self):
        expected = [
            ((0, F(1, 4), 0), (F(5, 4), 0, 0), (0, 0, 0)),
            ((0, F(-1, 4), 0), (F(-5, 4), 0, F(3, 4)), (0, F(-1, 4), 0)),
            ((0, F(1, 4), 0), (F(-1, 4), 0, F(3, 4)), (0, F(1, 4), 0)),
            ((0, 0, 0), (0, 0, F(-3, 4)), (0, F(-3, 4), 0)),
        ]
        for D, M in zip(self.D, expected):
            self.assertEqual(second_fundamental_form(self.L, D)[0], M)

    def test_integrability(self):
        self.assertEqual([is_integrable(self.L, D).integrable for D in self.D], [False, False, False, True])
        self.assertEqual([bracket_closure(self.L, D) for D in self.D], [False, False, False, True])

    def test_witness_names_the_bracket(self):
        witness = is_integrable(self.L, self.D[0]).witness
        self.assertIsNotNone(witness)
        self.assertNotEqual(witness.normal_component, 0)
        self.assertEqual(witness.bracket, self.L.bracket(self.D[0].tangent[witness.a], self.D[0].tangent[witness.b]))

    def test_integrable_but_not_umbilical(self):
        result = is_umbilical(self.L, self.D[3])
        self.assertFalse(result.umbilical)
        self.assertIsNotNone(result.violation)


class TestUnimodularDistributions(unittest.TestCase):
    """Eigenflag distributions of the (6, -4, 5) algebra."""

    def setUp(self):
        self.L = diagonal_3d(6, -4, 5)

    def test_witness_brackets(self):
        for direction, bracket in (((1, 1, 0), (-6, 4, 0)), ((1, -1, 0), (6, 4, 0))):
            result = is_integrable(self.L, from_direction(direction))
            self.assertFalse(result.integrable)
            self.assertEqual(result.witness.bracket, bracket)

    def test_tangent_frame(self):
        D = from_direction((2, 2, 0))
        self.assertEqual(D.normal, ((1, 1, 0),))
        self.assertEqual(D.tangent, ((1, -1, 0), (0, 0, 1)))


class TestTypeCObstruction(unittest.TestCase):
    """The rotating pair X(t), Y(t) in the e0, e1 plane of the printed type-C brackets."""

    @classmethod
    def setUpClass(cls):
        cls.L = fixture("type_c_4d_printed.json", skip_jacobi=True)
        cls.family = CircleFamily(4, 0, 1)

    def test_plane_p01(self):
        result = is_integrable(self.L, plane(4, (0, 1)))
        self.assertFalse(result.integrable)
        self.assertEqual(result.witness.bracket, (0, 0, -1, -1))
        self.assertFalse(is_umbilical(self.L, plane(4, (0, 1))).umbilical)

    def test_obstruction_is_constant(self):
        obstruction = circle_obstruction(self.L, self.family, 3, "Y", "X")
        self.assertTrue(obstruction.is_constant())
        self.assertEqual(obstruction.constant_value(), F(-3, 2))
        for t in (F(0), F(1), F(-2, 3), F(5)):
            self.assertEqual(constant_entry(self.L, self.family, 3, "Y", "X", t), F(-3, 2))

    def test_companion_entry(self):
        companion = circle_obstruction(self.L, self.family, "Y", 3, "X")
        self.assertTrue(companion.is_constant())
        self.assertEqual(companion.constant_value(), F(-1, 2))

    def test_antipode(self):
        check = antipode_check(self.L, self.family, 3, "Y", "X")
        self.assertTrue(check.agrees)
        self.assertEqual(check.value, F(-3, 2))

    def test_circle_distribution(self):
        D = self.family.distribution_at(F(1))
        self.assertEqual(D.normal, ((0, 1, 0, 0),))
        self.assertEqual(D.tangent[0], (-1, 0, 0, 0))

    def test_degenerate_family(self):
        with self.assertRaises(ValidationError):
            CircleFamily(4, 1, 1)


def test_umbilical_example():
    """On the abelian algebra every distribution is totally geodesic."""
    L = load(3, {})
    result = is_umbilical(L, from_direction((1, 2, 2)))
    assert result.umbilical
    assert result.H == (0, 0, 0)


def test_integrability_matches_bracket_closure():
    rng = generators.seeded(71)
    for _ in range(60):
        L = generators.jacobi_valid_algebra(rng)
        D = from_direction(generators.nonzero_vector(rng, L.dim))
        assert is_integrable(L, D).integrable == bracket_closure(L, D)


def test_frame_validation():
    with pytest.raises(ValidationError):
        Distribution(((1, 0, 0), (0, 1, 0)), ((1, 0, 1),))
    with pytest.raises(ValidationError):
        from_tangent([(1, 0, 0), (2, 0, 0)])
    with pytest.raises(ValidationError):
        plane(4, (0, 0))
    with pytest.raises(DimensionMismatchError):
        second_fundamental_form(diagonal_3d(1, 2, 3), plane(4, (0, 1)))


def test_from_tangent_builds_normal():
    D = from_tangent([(1, 0, 0, 0), (0, 1, 1, 0)])
    for z in D.normal:
        assert linalg.dot(z, (1, 0, 0, 0)) == 0
        assert linalg.dot(z, (0, 1, 1, 0)) == 0
    assert len(D.normal) == 2


FIXTURES = (
    ("unimodular_3d.json", False),
    ("type_b_4d.json", False),
    ("type_c_4d_printed.json", True),
)
CIRCLE_TS = (F(0), F(1), F(-1), F(1, 2), F(-2, 3), F(3), F(5, 4))


def random_tangent(rng, dim):
    while True:
        k = rng.randint(1, dim - 1)
        vectors = [generators.nonzero_vector(rng, dim) for _ in range(k)]
        if linalg.rank(vectors) == k:
            return vectors


def algebras_and_frames(rng, count):
    """Random and fixture algebras, each paired with a random distribution."""
    algebras = [fixture(name, skip) for name, skip in FIXTURES] + [load(3, {}), load(4, {})]
    for i in range(count):
        L = algebras[i] if i < len(algebras) else generators.jacobi_valid_algebra(rng)
        if i % 2:
            yield L, from_direction(generators.nonzero_vector(rng, L.dim))
        else:
            yield L, from_tangent(random_tangent(rng, L.dim))


def test_umbilical_implies_integrable():
    rng = generators.seeded(72)
    umbilical = 0
    for L, D in algebras_and_frames(rng, 120):
        if is_umbilical(L, D).umbilical:
            umbilical += 1
            assert is_integrable(L, D).integrable
    assert umbilical > 0


def test_verdicts_survive_rescaling():
    rng = generators.seeded(73)
    for L, D in algebras_and_frames(rng, 80):
        rescaled = from_tangent([linalg.scale(generators.nonzero_rational(rng), v) for v in D.tangent])
        assert is_integrable(L, rescaled).integrable == is_integrable(L, D).integrable
        assert is_umbilical(L, rescaled).umbilical == is_umbilical(L, D).umbilical


@pytest.mark.parametrize("name,skip_jacobi", FIXTURES)
def test_circle_family_matches_constant_frame(name, skip_jacobi):
    """Each circle entry at t equals the second fundamental form of X(t)^⊥ frozen at t."""
    L = fixture(name, skip_jacobi)
    for a in range(L.dim):
        for b in range(a + 1, L.dim):
            family = CircleFamily(L.dim, a, b)
            roles = ["Y"] + [k for k in range(L.dim) if k not in (a, b)]
            obstructions = {(U, W): circle_obstruction(L, family, U, "X", W) for U in roles for W in roles}
            for t in CIRCLE_TS:
                M = second_fundamental_form(L, family.distribution_at(t))[0]
                for i, U in enumerate(roles):
                    for j, W in enumerate(roles):
                        assert obstructions[U, W](t) == M[i][j]
                        assert constant_entry(L, family, U, "X", W, t) == M[i][j]


if __name__ == '__main__':
    unittest.main()
