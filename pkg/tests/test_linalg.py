"""
Tests for matrix arithmetic, differentials and normal forms.
"""

import itertools
import sys
import unittest
from pathlib import Path

project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from src.core.exceptions import DimensionMismatch, FieldMismatch, NotADifferential, SingularMatrix
from src.core.finite_field import ff_from_order
from src.core.linalg import (
    Layout,
    canonical_Dr,
    centralizer_block_form,
    homology_dim,
    identity,
    image_basis,
    inverse,
    jordan_Dr,
    kernel_basis,
    make_differential,
    mat_add,
    mat_mul,
    matrix_from_index,
    matrix_index,
    normal_form,
    rank,
    zero_matrix,
)
from src.models.matrix import MatrixGF


def _differentials(q, n):
    """Every differential on F_q^n, in enumeration order."""
    spec = ff_from_order(q)
    for index in range(q ** (n * n)):
        matrix = matrix_from_index(index, n, spec)
        if mat_mul(matrix, matrix).is_zero:
            yield make_differential(matrix)


class TestMatrixArithmetic(unittest.TestCase):
    """Test cases for products, ranks, kernels and inverses."""

    def setUp(self):
        """Set up test fixtures."""
        self.f2 = ff_from_order(2)
        self.f3 = ff_from_order(3)
        self.f4 = ff_from_order(4)

    def test_identity_is_neutral(self):
        """Test I * A = A over F_3."""
        a = MatrixGF.from_rows([[1, 2, 0], [0, 1, 1], [2, 2, 2]], self.f3)
        self.assertEqual(mat_mul(identity(3, self.f3), a), a)
        self.assertEqual(mat_mul(a, identity(3, self.f3)), a)

    def test_nilpotent_square(self):
        """Test [[0,1],[0,0]]^2 = 0 over F_2."""
        a = MatrixGF.from_rows([[0, 1], [0, 0]], self.f2)
        self.assertTrue(mat_mul(a, a).is_zero)

    def test_inverse_pair_over_f3(self):
        """Test [[1,1],[0,1]] * [[1,2],[0,1]] = I over F_3."""
        a = MatrixGF.from_rows([[1, 1], [0, 1]], self.f3)
        b = MatrixGF.from_rows([[1, 2], [0, 1]], self.f3)
        self.assertEqual(mat_mul(a, b), identity(2, self.f3))
        self.assertEqual(inverse(a), b)

    def test_shape_and_field_errors(self):
        """Test mismatched operands are rejected."""
        a = zero_matrix(2, 3, self.f2)
        with self.assertRaises(DimensionMismatch):
            mat_mul(a, a)
        with self.assertRaises(FieldMismatch):
            mat_mul(identity(2, self.f2), identity(2, self.f3))
        with self.assertRaises(FieldMismatch):
            mat_add(identity(2, self.f2), identity(2, self.f3))

    def test_rank_and_kernel_of_zero(self):
        """Test the zero matrix has rank 0 and the standard kernel basis."""
        zero = zero_matrix(3, 3, self.f2)
        self.assertEqual(rank(zero), 0)
        self.assertEqual(kernel_basis(zero), [(1, 0, 0), (0, 1, 0), (0, 0, 1)])
        self.assertEqual(image_basis(zero), [])

    def test_rank_and_kernel_of_identity(self):
        """Test the identity has full rank and an empty kernel."""
        for spec in (self.f2, self.f3, self.f4):
            self.assertEqual(rank(identity(4, spec)), 4)
            self.assertEqual(kernel_basis(identity(4, spec)), [])

    def test_all_ones_kernel(self):
        """Test ker [[1,1],[1,1]] over F_2 is spanned by (1,1)."""
        a = MatrixGF.from_rows([[1, 1], [1, 1]], self.f2)
        self.assertEqual(rank(a), 1)
        self.assertEqual(kernel_basis(a), [(1, 1)])

    def test_rank_nullity(self):
        """Test rank + dim ker = n for every 2x2 matrix over F_3."""
        for index in range(3 ** 4):
            a = matrix_from_index(index, 2, self.f3)
            self.assertEqual(rank(a) + len(kernel_basis(a)), 2)

    def test_singular_inverse(self):
        """Test inverting a singular matrix fails on both paths."""
        for spec in (self.f2, self.f3):
            singular = MatrixGF.from_rows([[1, 1], [1, 1]], spec)
            with self.assertRaises(SingularMatrix):
                inverse(singular)
        with self.assertRaises(DimensionMismatch):
            inverse(zero_matrix(2, 3, self.f3))

    def test_inverse_over_extension_field(self):
        """Test A * A^-1 = I for invertible 2x2 matrices over F_4."""
        checked = 0
        for index in range(0, 4 ** 4, 7):
            a = matrix_from_index(index, 2, self.f4)
            if rank(a) == 2:
                self.assertEqual(mat_mul(a, inverse(a)), identity(2, self.f4))
                checked += 1
        self.assertGreater(checked, 0)

    def test_gf2_fast_path_matches_generic(self):
        """Test bit-mask products, ranks and inverses against generic elimination."""
        for n in (2, 3):
            matrices = [matrix_from_index(i, n, self.f2) for i in range(2 ** (n * n))]
            for a in matrices[::5]:
                self.assertEqual(rank(a), rank(a, use_fast_path=False))
                for b in matrices[::37]:
                    self.assertEqual(mat_mul(a, b), mat_mul(a, b, use_fast_path=False))
                if rank(a) == n:
                    self.assertEqual(inverse(a), inverse(a, use_fast_path=False))

    def test_index_encoding(self):
        """Test entry (i, j) is base-q digit i*n + j."""
        a = matrix_from_index(5, 2, self.f2)
        self.assertEqual(a.to_rows(), [[1, 0], [1, 0]])
        self.assertEqual(matrix_index(a), 5)
        b = matrix_from_index(1 + 2 * 3, 2, self.f3)
        self.assertEqual(b.to_rows(), [[1, 2], [0, 0]])
        for index in range(0, 4 ** 4, 13):
            self.assertEqual(matrix_index(matrix_from_index(index, 2, self.f4)), index)
        with self.assertRaises(ValueError):
            matrix_from_index(16, 2, self.f2)

    def test_matrix_json(self):
        """Test MatrixGF JSON form."""
        a = MatrixGF.from_rows([[0, 1, 2], [3, 2, 1]], self.f4)
        self.assertEqual(MatrixGF.from_dict(a.to_dict()), a)
        self.assertEqual(a.column(2), (2, 1))
        self.assertEqual(a.row(1), (3, 2, 1))


class TestDifferentials(unittest.TestCase):
    """Test cases for differentials and homology."""

    def setUp(self):
        """Set up test fixtures."""
        self.f2 = ff_from_order(2)
        self.f3 = ff_from_order(3)

    def test_make_differential(self):
        """Test validation of D^2 = 0."""
        zero = make_differential(zero_matrix(3, 3, self.f2))
        self.assertEqual(zero.rank, 0)
        jordan = make_differential(MatrixGF.from_rows([[0, 1], [0, 0]], self.f2))
        self.assertEqual(jordan.rank, 1)
        with self.assertRaises(NotADifferential):
            make_differential(identity(2, self.f3))
        with self.assertRaises(DimensionMismatch):
            make_differential(zero_matrix(2, 3, self.f2))

    def test_homology_dim(self):
        """Test r = n - 2 rank(D)."""
        self.assertEqual(homology_dim(make_differential(zero_matrix(4, 4, self.f2))), 4)
        self.assertEqual(homology_dim(jordan_Dr(1, 0, self.f2)), 0)
        self.assertEqual(homology_dim(jordan_Dr(1, 1, self.f2)), 1)
        self.assertEqual(homology_dim(canonical_Dr(2, 1, self.f3)), 1)

    def test_canonical_shape(self):
        """Test canonical_Dr places the identity in the top-right block."""
        self.assertTrue(canonical_Dr(0, 3, self.f2).D.is_zero)
        self.assertEqual(canonical_Dr(1, 0, self.f2).D.to_rows(), [[0, 1], [0, 0]])
        self.assertEqual(
            canonical_Dr(1, 1, self.f2).D.to_rows(),
            [[0, 0, 1], [0, 0, 0], [0, 0, 0]]
        )
        for m, r in itertools.product(range(3), range(3)):
            if 2 * m + r:
                self.assertEqual(canonical_Dr(m, r, self.f3).rank, m)

    def test_image_inside_kernel(self):
        """Test D v = 0 for every image basis vector v."""
        for d in _differentials(3, 2):
            for v in image_basis(d.D):
                column = MatrixGF.from_columns([v], 2, self.f3)
                self.assertTrue(mat_mul(d.D, column).is_zero)

    def test_differential_counts_small(self):
        """Test the number of differentials at (2, 2) and (3, 2)."""
        self.assertEqual(len(list(_differentials(2, 2))), 4)
        self.assertEqual(len(list(_differentials(3, 2))), 9)


class TestNormalForm(unittest.TestCase):
    """Test cases for the normal form decomposition."""

    def setUp(self):
        """Set up test fixtures."""
        self.f2 = ff_from_order(2)
        self.f3 = ff_from_order(3)

    def test_zero_differential(self):
        """Test the zero map needs no change of basis."""
        form = normal_form(make_differential(zero_matrix(3, 3, self.f2)))
        self.assertEqual((form.r, form.m), (3, 0))
        self.assertEqual(form.P, identity(3, self.f2))

    def test_canonical_round_trip(self):
        """Test normal_form of canonical_Dr recovers (m, r)."""
        for m, r in [(1, 0), (1, 1), (2, 0), (2, 1), (1, 3)]:
            d = canonical_Dr(m, r, self.f3)
            form = normal_form(d)
            self.assertEqual((form.m, form.r), (m, r))
            self.assertTrue(form.verify(d))

    def test_all_differentials_gf2(self):
        """Test the round trip on every differential over F_2 up to n = 4."""
        for n in (1, 2, 3, 4):
            for d in _differentials(2, n):
                form = normal_form(d)
                self.assertEqual(form.r, homology_dim(d))
                self.assertTrue(form.verify(d))

    def test_all_differentials_gf3_and_gf4(self):
        """Test the round trip on every differential over F_3 and F_4 at n = 2."""
        for q in (3, 4):
            for d in _differentials(q, 2):
                self.assertTrue(normal_form(d).verify(d))

    def test_jordan_basis(self):
        """Test reordering into 2x2 Jordan blocks."""
        for d in _differentials(2, 3):
            form = normal_form(d).jordan_basis()
            self.assertIs(form.layout, Layout.JORDAN)
            self.assertTrue(form.verify(d))
            self.assertIs(form.jordan_basis(), form)

    def test_normal_form_json(self):
        """Test NormalForm JSON form."""
        data = normal_form(canonical_Dr(1, 1, self.f2)).to_dict()
        self.assertEqual(data['r'], 1)
        self.assertEqual(data['m'], 1)
        self.assertIn('P', data)


class TestCentralizerBlockForm(unittest.TestCase):
    """Test cases for the centralizer block pattern."""

    def setUp(self):
        """Set up test fixtures."""
        self.f2 = ff_from_order(2)

    def test_identity_passes(self):
        """Test the identity matches every block layout."""
        for m, r in [(1, 0), (1, 1), (2, 1), (0, 3)]:
            self.assertTrue(centralizer_block_form(identity(2 * m + r, self.f2), m, r))

    def test_lower_block_fails(self):
        """Test a nonzero X21 block breaks the pattern."""
        x = MatrixGF.from_rows([[1, 0, 0], [1, 1, 0], [0, 0, 1]], self.f2)
        self.assertFalse(centralizer_block_form(x, 1, 1))

    def test_diagonal_blocks_must_match(self):
        """Test X11 != X33 breaks the pattern."""
        x = MatrixGF.from_rows([[1, 1], [0, 0]], self.f2)
        self.assertFalse(centralizer_block_form(x, 1, 0))

    def test_commuting_matrices_match_pattern(self):
        """Test every matrix commuting with D_r has the block pattern."""
        d = canonical_Dr(1, 1, self.f2).D
        for index in range(2 ** 9):
            x = matrix_from_index(index, 3, self.f2)
            if mat_mul(x, d) == mat_mul(d, x):
                self.assertTrue(centralizer_block_form(x, 1, 1))

    def test_wrong_size(self):
        """Test the layout must match the matrix size."""
        with self.assertRaises(DimensionMismatch):
            centralizer_block_form(identity(3, self.f2), 1, 0)


if __name__ == "__main__":
    unittest.main()
