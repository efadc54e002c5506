"""
Tests for finite field construction and arithmetic.
"""

import os
import random
import sys
import unittest
from pathlib import Path

project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from src.core.exceptions import DegreeOutOfRange, DivisionByZero, NotPrime, NotPrimePower, ReducibleModulus
from src.core.finite_field import (
    arithmetic,
    ff_add,
    ff_enumerate,
    ff_from_order,
    ff_inv,
    ff_make,
    ff_mul,
    ff_neg,
    ff_pow,
    ff_sub,
    is_irreducible,
    is_prime,
)
from src.models.field import FieldElement, FieldSpec
from src.models.matrix import MatrixGF

FULL = os.environ.get("HOMOLOGY_CENSUS_FULL") == "1"


class TestFieldConstruction(unittest.TestCase):
    """Test cases for ff_make and ff_from_order."""

    def test_prime_field(self):
        """Test F_2 has no modulus."""
        spec = ff_make(2, 1)
        self.assertEqual(spec.q, 2)
        self.assertEqual(spec.modulus, ())
        self.assertTrue(spec.is_prime_field)

    def test_smallest_modulus_gf4(self):
        """Test F_4 uses x^2 + x + 1."""
        spec = ff_make(2, 2)
        self.assertEqual(spec.q, 4)
        self.assertEqual(spec.modulus, (1, 1, 1))

    def test_smallest_modulus_gf8(self):
        """Test F_8 uses x^3 + x^2 + 1, the first irreducible comparing low degrees first."""
        self.assertEqual(ff_make(2, 3).modulus, (1, 0, 1, 1))

    def test_smallest_modulus_other_fields(self):
        """Test F_9 uses x^2 + 1 and F_16 uses x^4 + x^3 + 1."""
        self.assertEqual(ff_make(3, 2).modulus, (1, 0, 1))
        self.assertEqual(ff_make(2, 4).modulus, (1, 0, 0, 1, 1))

    def test_composite_characteristic(self):
        """Test composite p is rejected."""
        with self.assertRaises(NotPrime):
            ff_make(4, 1)

    def test_degree_limits(self):
        """Test degree and order caps."""
        with self.assertRaises(DegreeOutOfRange):
            ff_make(2, 9)
        with self.assertRaises(DegreeOutOfRange):
            ff_make(2, 0)
        with self.assertRaises(DegreeOutOfRange):
            ff_make(3, 13)

    def test_from_order(self):
        """Test factoring q into p^e."""
        spec = ff_from_order(9)
        self.assertEqual((spec.p, spec.e), (3, 2))
        self.assertEqual(ff_from_order(7), ff_make(7, 1))
        for q in (1, 6, 12, 100):
            with self.assertRaises(NotPrimePower):
                ff_from_order(q)

    def test_irreducibility(self):
        """Test irreducibility checks over F_2 and F_3."""
        self.assertTrue(is_irreducible((1, 1, 1), 2))
        self.assertFalse(is_irreducible((1, 0, 1), 2))
        self.assertFalse(is_irreducible((0, 1, 1), 2))
        self.assertTrue(is_irreducible((1, 0, 1), 3))

    def test_is_prime(self):
        """Test trial division."""
        self.assertEqual([n for n in range(20) if is_prime(n)], [2, 3, 5, 7, 11, 13, 17, 19])

    def test_spec_json(self):
        """Test FieldSpec JSON form."""
        spec = ff_make(3, 2)
        data = spec.to_dict()
        self.assertEqual(data, {'p': 3, 'e': 2, 'modulus': list(spec.modulus)})
        self.assertEqual(FieldSpec.from_dict(data), spec)

    def test_spec_validation(self):
        """Test FieldSpec rejects composite p, bad degrees and reducible moduli."""
        self.assertEqual(FieldSpec(p=2, e=2, modulus=(1, 1, 1)), ff_make(2, 2))
        with self.assertRaises(NotPrime):
            FieldSpec(p=4, e=1)
        with self.assertRaises(DegreeOutOfRange):
            FieldSpec(p=2, e=0)
        with self.assertRaises(ReducibleModulus):
            FieldSpec(p=2, e=2, modulus=(0, 0, 1))
        with self.assertRaises(ReducibleModulus):
            FieldSpec(p=2, e=2, modulus=(1, 1, 0))
        with self.assertRaises(ReducibleModulus):
            FieldSpec(p=3, e=2, modulus=(1, 3, 1))
        with self.assertRaises(ReducibleModulus):
            FieldSpec(p=5, e=1, modulus=(1, 1))

    def test_matrix_json_with_reducible_modulus(self):
        """Test a matrix over x^2 (not a field) is refused when loaded."""
        data = {'rows': 1, 'cols': 1, 'spec': {'p': 2, 'e': 2, 'modulus': [0, 0, 1]}, 'entries': [[0, 1]]}
        with self.assertRaises(ReducibleModulus):
            MatrixGF.from_dict(data)
        data['spec']['modulus'] = [1, 1, 1]
        self.assertEqual(MatrixGF.from_dict(data).entries, (2,))

    def test_order_cap_before_primality(self):
        """Test a huge characteristic fails on the order cap."""
        with self.assertRaises(DegreeOutOfRange):
            ff_make(2 ** 61 - 1, 1)


class TestFieldArithmetic(unittest.TestCase):
    """Test cases for element arithmetic."""

    def setUp(self):
        """Set up test fixtures."""
        self.f5 = ff_make(5, 1)
        self.f4 = ff_make(2, 2)
        self.x = FieldElement((0, 1))
        self.x1 = FieldElement((1, 1))

    def test_prime_field_examples(self):
        """Test F_5 addition and inverse."""
        two, four = FieldElement((2,)), FieldElement((4,))
        self.assertEqual(ff_add(two, four, self.f5), FieldElement((1,)))
        self.assertEqual(ff_sub(two, four, self.f5), FieldElement((3,)))
        self.assertEqual(ff_inv(two, self.f5), FieldElement((3,)))

    def test_gf4_examples(self):
        """Test x * x = x + 1 and inv(x) = x + 1 in F_4."""
        self.assertEqual(ff_mul(self.x, self.x, self.f4), self.x1)
        self.assertEqual(ff_inv(self.x, self.f4), self.x1)
        self.assertEqual(ff_inv(self.f4.one, self.f4), self.f4.one)

    def test_inverse_of_zero(self):
        """Test division by zero is reported."""
        with self.assertRaises(DivisionByZero):
            ff_inv(self.f4.zero, self.f4)
        with self.assertRaises(ZeroDivisionError):
            arithmetic(self.f5).inv(0)

    def test_additive_inverse(self):
        """Test a + (-a) = 0 in several fields."""
        for q in (2, 3, 4, 9, 16):
            spec = ff_from_order(q)
            for a in ff_enumerate(spec):
                self.assertEqual(ff_add(a, ff_neg(a, spec), spec), spec.zero)

    def test_enumeration_order(self):
        """Test canonical element order."""
        self.assertEqual(ff_enumerate(ff_make(2, 1)), [FieldElement((0,)), FieldElement((1,))])
        self.assertEqual([e.coeffs for e in ff_enumerate(ff_make(3, 1))], [(0,), (1,), (2,)])
        self.assertEqual(
            [e.coeffs for e in ff_enumerate(self.f4)],
            [(0, 0), (1, 0), (0, 1), (1, 1)]
        )

    def test_inverses_and_group_order(self):
        """Test a * a^-1 = 1 and a^(q-1) = 1 exhaustively."""
        orders = (2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 32)
        if FULL:
            orders += (64, 81, 125, 128, 243, 256)
        for q in orders:
            ar = arithmetic(ff_from_order(q))
            for a in range(1, q):
                self.assertEqual(ar.mul(a, ar.inv(a)), 1, f"q={q}, a={a}")
                self.assertEqual(ar.pow(a, q - 1), 1, f"q={q}, a={a}")

    def test_field_axioms_random(self):
        """Test ring axioms on random triples."""
        rng = random.Random(1234)
        triples = 10000 if FULL else 2000
        for q in (4, 8, 9, 25):
            ar = arithmetic(ff_from_order(q))
            for _ in range(triples):
                a, b, c = rng.randrange(q), rng.randrange(q), rng.randrange(q)
                self.assertEqual(ar.add(ar.add(a, b), c), ar.add(a, ar.add(b, c)))
                self.assertEqual(ar.mul(ar.mul(a, b), c), ar.mul(a, ar.mul(b, c)))
                self.assertEqual(ar.add(a, b), ar.add(b, a))
                self.assertEqual(ar.mul(a, b), ar.mul(b, a))
                self.assertEqual(ar.mul(a, ar.add(b, c)), ar.add(ar.mul(a, b), ar.mul(a, c)))

    def test_polynomial_path_without_tables(self):
        """Test arithmetic of a field too large for lookup tables."""
        spec = ff_make(3, 6)
        ar = arithmetic(spec)
        self.assertIsNone(ar._tables)
        for a in range(1, 60):
            self.assertEqual(ar.mul(a, ar.inv(a)), 1)
        element = spec.element(5)
        self.assertEqual(ff_mul(element, ff_inv(element, spec), spec), spec.one)

    def test_power(self):
        """Test ff_pow."""
        self.assertEqual(ff_pow(self.x, 3, self.f4), self.f4.one)
        self.assertEqual(ff_pow(FieldElement((2,)), 0, self.f5), FieldElement((1,)))

    def test_element_codes(self):
        """Test code round trip and validation."""
        spec = ff_make(3, 2)
        for code in range(9):
            self.assertEqual(spec.code(spec.element(code)), code)
        with self.assertRaises(ValueError):
            spec.code(FieldElement((3, 0)))
        with self.assertRaises(ValueError):
            spec.element(9)


if __name__ == "__main__":
    unittest.main()
