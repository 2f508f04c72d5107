import os
import sys
import unittest
from fractions import Fraction as F

import numpy as np
import sympy

# Add the project root to the Python path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from distributions.circle import COS, SIN
from ratmath import linalg
from ratmath.eigen import rationalize_direction, sym_eigen_numeric
from ratmath.poly import Poly1, RationalFunction
from ratmath.rational import format_rational, parse_rational, parse_vector
from ratmath.tensor import TensorTable, antisymmetrize, contract, one_form, wedge
from tests import generators
from utils.errors import DecimalLiteralError, DimensionMismatchError, NonSymmetricError, ValidationError


def random_form(rng, degree, dim):
    raw = TensorTable(degree, dim, [generators.rational(rng) for _ in range(dim ** degree)])
    return antisymmetrize(raw)


class TestRational(unittest.TestCase):
    """Parsing and formatting of exact rationals."""

    def test_parse_forms(self):
        """Strings, ints and Fractions all parse exactly."""
        self.assertEqual(parse_rational("1/2"), F(1, 2))
        self.assertEqual(parse_rational(" -3 / 6 "), F(-1, 2))
        self.assertEqual(parse_rational("7"), F(7))
        self.assertEqual(parse_rational(4), F(4))
        self.assertEqual(parse_rational(F(2, 3)), F(2, 3))

    def test_decimal_rejected_with_hint(self):
        """A decimal literal names the rational to write instead."""
        with self.assertRaises(DecimalLiteralError) as ctx:
            parse_rational("0.5", "c")
        self.assertIn("decimals forbidden; write 1/2", str(ctx.exception))
        with self.assertRaises(DecimalLiteralError):
            parse_rational(0.25)

    def test_invalid_literals(self):
        for bad in ("1/0", "abc", True, None, "1/2/3"):
            with self.assertRaises(ValidationError):
                parse_rational(bad)

    def test_format(self):
        self.assertEqual(format_rational(F(-11, 16)), "-11/16")
        self.assertEqual(format_rational(F(4, 2)), "2")
        self.assertEqual(parse_vector(["1", "-1/2", 0]), (F(1), F(-1, 2), F(0)))


class TestLinalg(unittest.TestCase):
    """Exact vectors and matrices."""

    def test_det_inverse_solve(self):
        m = linalg.matrix([[2, 1, 0], [1, 3, 1], [0, 1, 4]])
        self.assertEqual(linalg.det(m), F(18))
        inv = linalg.inverse(m)
        self.assertEqual(linalg.mat_mul(m, inv), linalg.identity(3))
        self.assertEqual(linalg.mat_vec(m, linalg.solve(m, (1, 2, 3))), linalg.vector((1, 2, 3)))

    def test_singular(self):
        m = linalg.matrix([[1, 2], [2, 4]])
        self.assertEqual(linalg.det(m), 0)
        self.assertEqual(linalg.rank(m), 1)
        with self.assertRaises(ValidationError):
            linalg.inverse(m)

    def test_nullspace_and_complement(self):
        basis = linalg.orthogonal_complement([(1, 0, 0, 0)], 4)
        self.assertEqual(basis, [(0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)])
        for v in linalg.orthogonal_complement([(1, 1, 0)], 3):
            self.assertEqual(linalg.dot(v, (1, 1, 0)), 0)

    def test_integer_direction(self):
        self.assertEqual(linalg.integer_direction((F(-1, 2), F(1, 3), 0)), (3, -2, 0))
        self.assertEqual(linalg.integer_direction((0, -4, 6)), (0, 2, -3))

    def test_wedge_matrix_is_skew(self):
        B = linalg.wedge_matrix((1, 0, 0), (0, 1, 0))
        self.assertEqual(B[0][1], 1)
        self.assertEqual(B[1][0], -1)
        self.assertTrue(linalg.is_skew(B))

    def test_cross(self):
        self.assertEqual(linalg.cross((1, 0, 0), (0, 1, 0)), (0, 0, 1))
        with self.assertRaises(DimensionMismatchError):
            linalg.cross((1, 0), (0, 1))

    def test_elimination_matches_sympy(self):
        """Rank, det and nullspace agree with sympy on random rational matrices."""
        rng = generators.seeded(31)
        for _ in range(40):
            rows, cols = rng.randint(1, 5), rng.randint(1, 5)
            m = linalg.matrix([[generators.rational(rng, 2) for _ in range(cols)] for _ in range(rows)])
            reference = sympy.Matrix(rows, cols, lambda i, j: sympy.Rational(m[i][j].numerator, m[i][j].denominator))
            self.assertEqual(linalg.rank(m), reference.rank())
            basis = linalg.nullspace(m)
            self.assertEqual(len(basis), cols - reference.rank())
            for v in basis:
                self.assertTrue(linalg.is_zero(linalg.mat_vec(m, v)))
            if rows == cols:
                self.assertEqual(linalg.det(m), F(str(reference.det())))

    def test_random_inverse(self):
        rng = generators.seeded(32)
        for _ in range(20):
            n = rng.randint(1, 5)
            m = linalg.matrix([[generators.rational(rng) for _ in range(n)] for _ in range(n)])
            if linalg.det(m) == 0:
                continue
            self.assertEqual(linalg.mat_mul(m, linalg.inverse(m)), linalg.identity(n))


class TestEigen(unittest.TestCase):
    """Floating-point fallbacks."""

    def test_sym_eigen_diagonalizes(self):
        m = ((2, 1, 0), (1, 2, 0), (0, 0, -1))
        values, vectors = sym_eigen_numeric(m)
        self.assertTrue(np.allclose(values, [-1.0, 1.0, 3.0], atol=1e-10))
        a = np.array([[float(x) for x in row] for row in m])
        for k in range(3):
            self.assertLess(np.linalg.norm(a @ vectors[:, k] - values[k] * vectors[:, k]), 1e-10)

    def test_diagonal_eigenvalues(self):
        values, vectors = sym_eigen_numeric(((F(1, 8), 0, 0), (0, F(1, 2), 0), (0, 0, F(-5, 8))))
        self.assertTrue(np.allclose(values, [-0.625, 0.125, 0.5], atol=1e-12))
        self.assertTrue(np.allclose(np.abs(vectors), [[0, 1, 0], [0, 0, 1], [1, 0, 0]], atol=1e-12))

    def test_root_two_eigenvectors(self):
        """The swap matrix has eigenvectors (1, ±1)/√2."""
        values, vectors = sym_eigen_numeric(((0, 1), (1, 0)))
        self.assertTrue(np.allclose(values, [-1.0, 1.0], atol=1e-12))
        r = 1 / np.sqrt(2)
        self.assertTrue(np.allclose(np.abs(vectors), [[r, r], [r, r]], atol=1e-12))
        self.assertAlmostEqual(float(vectors[0, 0] * vectors[1, 0]), -0.5, places=12)
        self.assertAlmostEqual(float(vectors[0, 1] * vectors[1, 1]), 0.5, places=12)

    def test_zero_matrix_keeps_identity(self):
        values, vectors = sym_eigen_numeric(linalg.zero_matrix(4))
        self.assertEqual(values, [0.0] * 4)
        self.assertTrue(np.array_equal(vectors, np.eye(4)))

    def test_reconstruction(self):
        """V Λ Vᵀ gives the matrix back and V is orthogonal, up to dimension 6."""
        rng = generators.seeded(33)
        for _ in range(30):
            n = rng.randint(1, 6)
            upper = {(i, j): generators.rational(rng) for i in range(n) for j in range(i, n)}
            m = tuple(tuple(upper[min(i, j), max(i, j)] for j in range(n)) for i in range(n))
            values, vectors = sym_eigen_numeric(m)
            a = np.array([[float(x) for x in row] for row in m])
            self.assertTrue(np.allclose(vectors @ np.diag(values) @ vectors.T, a, atol=1e-8))
            self.assertTrue(np.allclose(vectors.T @ vectors, np.eye(n), atol=1e-9))
            self.assertEqual(values, sorted(values))

    def test_non_symmetric_rejected(self):
        with self.assertRaises(NonSymmetricError):
            sym_eigen_numeric(((1, 2), (0, 1)))

    def test_rationalize_direction(self):
        self.assertEqual(rationalize_direction([0.7071067811865476, -0.7071067811865476, 0.0]), (1, -1, 0))
        self.assertEqual(rationalize_direction([0.0, -0.5, 0.25]), (0, 2, -1))
        self.assertIsNone(rationalize_direction([0.0, 0.0]))


class TestPoly(unittest.TestCase):
    """Univariate polynomials and reduced rational functions."""

    def test_pythagoras_is_constant_one(self):
        total = COS * COS + SIN * SIN
        self.assertTrue(total.is_constant())
        self.assertEqual(total.constant_value(), 1)

    def test_reduction(self):
        t = Poly1.t()
        f = RationalFunction(t * t - Poly1.constant(1), t - Poly1.constant(1))
        self.assertEqual(f.den, Poly1.constant(1))
        self.assertEqual(f(F(3)), F(4))

    def test_limit_at_infinity(self):
        self.assertEqual(COS.limit_at_infinity(), -1)
        self.assertEqual(SIN.limit_at_infinity(), 0)
        self.assertIsNone(RationalFunction(Poly1.t()).limit_at_infinity())

    def test_backed_by_sympy_over_qq(self):
        p = Poly1((1, F(1, 2), 3))
        self.assertIsInstance(p.poly, sympy.Poly)
        self.assertEqual(p.poly.get_domain(), sympy.QQ)
        self.assertEqual(p.coeffs, (F(1), F(1, 2), F(3)))
        self.assertEqual(p.degree, 2)
        self.assertEqual(Poly1().coeffs, ())

    def test_gcd_and_division(self):
        t = Poly1.t()
        a = (t - 1) * (t + 2)
        b = (t - 1) * (2 * t + 1)
        self.assertEqual(a.gcd(b), t - 1)
        quotient, remainder = (a + 3).divmod(t - 1)
        self.assertEqual(quotient, t + 2)
        self.assertEqual(remainder, Poly1.constant(3))

    def test_denominator_is_monic(self):
        t = Poly1.t()
        f = RationalFunction(2 * t + 2, 4 * t * t + 4 * t)
        self.assertEqual(f.den, t)
        self.assertEqual(f.num, Poly1.constant(F(1, 2)))


class TestTensor(unittest.TestCase):
    """Dense tables and forms."""

    def test_wedge_of_one_forms(self):
        w = wedge(one_form((1, 0, 0)), one_form((0, 1, 0)))
        self.assertEqual(w[0, 1], F(1, 2))
        self.assertEqual(w[1, 0], F(-1, 2))
        self.assertTrue(wedge(one_form((1, 2, 3)), one_form((2, 4, 6))).is_zero())

    def test_degree_overflow_is_zero(self):
        two = wedge(one_form((1, 0)), one_form((0, 1)))
        self.assertTrue(wedge(two, one_form((1, 1))).is_zero())

    def test_symmetry_checks(self):
        t = TensorTable.from_matrix(((1, 2), (2, 5)), (("sym", (0, 1)),))
        self.assertEqual(t.check_symmetries(), [])
        self.assertEqual(t.check_symmetries((("anti", (0, 1)),)), [("anti", (0, 1))])
        self.assertEqual(antisymmetrize(t).is_zero(), True)

    def test_contract(self):
        t = TensorTable.from_matrix(((1, 2), (3, 4)))
        self.assertEqual(contract(t, 0, 1).entries, (F(5),))

    def test_antisymmetrize_is_idempotent(self):
        rng = generators.seeded(41)
        for _ in range(10):
            t = TensorTable(3, 3, [generators.rational(rng) for _ in range(27)])
            once = antisymmetrize(t)
            self.assertEqual(antisymmetrize(once), once)

    def test_wedge_graded_commutativity(self):
        """a∧b = (-1)^(kl) b∧a."""
        rng = generators.seeded(42)
        for k, l in ((1, 1), (1, 2), (2, 1), (2, 2), (1, 3)):
            a, b = random_form(rng, k, 4), random_form(rng, l, 4)
            self.assertEqual(wedge(a, b), wedge(b, a).scale((-1) ** (k * l)))

    def test_wedge_associativity(self):
        rng = generators.seeded(43)
        for degrees in ((1, 1, 1), (1, 1, 2), (2, 1, 1), (1, 2, 1)):
            a, b, c = (random_form(rng, k, 4) for k in degrees)
            self.assertEqual(wedge(wedge(a, b), c), wedge(a, wedge(b, c)))

    def test_repeated_one_form_vanishes(self):
        rng = generators.seeded(44)
        for _ in range(20):
            gamma = one_form(generators.vector(rng, 3))
            sigma = one_form(generators.vector(rng, 3))
            self.assertTrue(wedge(wedge(gamma, sigma), gamma).is_zero())

    def test_shape_errors(self):
        with self.assertRaises(DimensionMismatchError):
            TensorTable(2, 3, (0,) * 8)
        with self.assertRaises(DimensionMismatchError):
            TensorTable.zeros(2, 2) + TensorTable.zeros(2, 3)


if __name__ == '__main__':
    unittest.main()
