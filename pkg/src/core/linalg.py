"""
Dense linear algebra over F_q: products, rank, kernel and image bases,
inverses, differentials and their normal form.

Elimination always takes the first nonzero pivot in column order, so
every basis returned here is reproducible. Over F_2 products, ranks and
inverses run on packed row masks (see gf2) with identical results.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, List, Sequence, Tuple

from . import gf2
from .exceptions import (
    DimensionMismatch,
    FieldMismatch,
    InvariantBreach,
    NotADifferential,
    SingularMatrix,
)
from .finite_field import FieldArithmetic, arithmetic
from ..models.field import FieldSpec
from ..models.matrix import MatrixGF

Vector = Tuple[int, ...]


class Layout(Enum):
    """Basis order of a normal form."""
    CANONICAL = "e-f-e'"
    JORDAN = "jordan"


def identity(n: int, spec: FieldSpec) -> MatrixGF:
    """n x n identity matrix."""
    return MatrixGF(n, n, spec, tuple(1 if i == j else 0 for i in range(n) for j in range(n)))


def zero_matrix(rows: int, cols: int, spec: FieldSpec) -> MatrixGF:
    """All-zero matrix."""
    return MatrixGF(rows, cols, spec, (0,) * (rows * cols))


def _check_field(a: MatrixGF, b: MatrixGF) -> None:
    """Require both operands over the same field."""
    if a.spec != b.spec:
        raise FieldMismatch(f"{a.spec} vs {b.spec}")


def mat_mul(a: MatrixGF, b: MatrixGF, use_fast_path: bool = True) -> MatrixGF:
    """
    Matrix product over F_q.

    Args:
        a: Left factor
        b: Right factor
        use_fast_path: Allow the packed GF(2) kernel when q = 2

    Returns:
        Product matrix

    Raises:
        DimensionMismatch: a.cols != b.rows
        FieldMismatch: factors over different fields
    """
    _check_field(a, b)
    if a.cols != b.rows:
        raise DimensionMismatch(f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    if use_fast_path and a.spec.q == 2:
        return gf2.from_masks(gf2.mul(gf2.to_masks(a), gf2.to_masks(b)), b.cols, a.spec)

    ar = arithmetic(a.spec)
    columns = [b.column(j) for j in range(b.cols)]
    entries = tuple(
        ar.dot(a.row(i), col) for i in range(a.rows) for col in columns
    )
    return MatrixGF(a.rows, b.cols, a.spec, entries)


def mat_add(a: MatrixGF, b: MatrixGF) -> MatrixGF:
    """Entrywise sum."""
    _check_field(a, b)
    if (a.rows, a.cols) != (b.rows, b.cols):
        raise DimensionMismatch(f"cannot add {a.rows}x{a.cols} and {b.rows}x{b.cols}")
    ar = arithmetic(a.spec)
    return MatrixGF(a.rows, a.cols, a.spec, tuple(ar.add(x, y) for x, y in zip(a.entries, b.entries)))


def _rref(rows: List[List[int]], n_cols: int, ar: FieldArithmetic) -> Tuple[List[List[int]], List[int]]:
    """Reduced row echelon form and pivot columns."""
    work = [list(row) for row in rows]
    pivots: List[int] = []
    r = 0
    for col in range(n_cols):
        if r == len(work):
            break
        pivot = next((k for k in range(r, len(work)) if work[k][col]), None)
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        work[r] = ar.scale(work[r], ar.inv(work[r][col]))
        for k in range(len(work)):
            if k != r and work[k][col]:
                work[k] = ar.axpy(work[k], work[k][col], work[r])
        pivots.append(col)
        r += 1
    return work, pivots


def rank(a: MatrixGF, use_fast_path: bool = True) -> int:
    """Rank by Gaussian elimination with exact field arithmetic."""
    if use_fast_path and a.spec.q == 2:
        return gf2.rank(gf2.to_masks(a), a.cols)
    _, pivots = _rref(a.to_rows(), a.cols, arithmetic(a.spec))
    return len(pivots)


def kernel_basis(a: MatrixGF) -> List[Vector]:
    """
    Basis of the right kernel {x : a x = 0}.

    One vector per free column of the reduced echelon form, in column
    order, with a 1 at its free column.
    """
    ar = arithmetic(a.spec)
    reduced, pivots = _rref(a.to_rows(), a.cols, ar)
    pivot_set = set(pivots)
    basis = []
    for free in range(a.cols):
        if free in pivot_set:
            continue
        vec = [0] * a.cols
        vec[free] = 1
        for row_idx, col in enumerate(pivots):
            vec[col] = ar.neg(reduced[row_idx][free])
        basis.append(tuple(vec))
    return basis


def image_basis(a: MatrixGF) -> List[Vector]:
    """Basis of the column space: the columns of a at its pivot columns."""
    _, pivots = _rref(a.to_rows(), a.cols, arithmetic(a.spec))
    return [a.column(col) for col in pivots]


def inverse(a: MatrixGF, use_fast_path: bool = True) -> MatrixGF:
    """
    Inverse by Gauss-Jordan elimination.

    Raises:
        DimensionMismatch: a is not square
        SingularMatrix: a is not invertible
    """
    if not a.is_square:
        raise DimensionMismatch(f"cannot invert {a.rows}x{a.cols} matrix")
    n = a.rows
    if use_fast_path and a.spec.q == 2:
        masks = gf2.inverse(gf2.to_masks(a))
        if masks is None:
            raise SingularMatrix("matrix is singular over GF(2)")
        return gf2.from_masks(masks, n, a.spec)

    ar = arithmetic(a.spec)
    augmented = [list(a.row(i)) + [1 if i == j else 0 for j in range(n)] for i in range(n)]
    reduced, pivots = _rref(augmented, n, ar)
    if pivots != list(range(n)):
        raise SingularMatrix(f"matrix is singular over {a.spec}")
    return MatrixGF.from_rows([row[n:] for row in reduced], a.spec)


def matrix_from_index(index: int, n: int, spec: FieldSpec) -> MatrixGF:
    """
    Decode an enumeration index into an n x n matrix.

    Entry (i, j) is the base-q digit at position i*n + j, least
    significant first, with digit value equal to the element code.
    """
    q = spec.q
    if not 0 <= index < q ** (n * n):
        raise ValueError(f"index {index} outside [0, {q}^{n * n})")
    entries = []
    for _ in range(n * n):
        index, digit = divmod(index, q)
        entries.append(digit)
    return MatrixGF(n, n, spec, tuple(entries))


def matrix_index(a: MatrixGF) -> int:
    """Enumeration index of a square matrix (inverse of matrix_from_index)."""
    index = 0
    for code in reversed(a.entries):
        index = index * a.spec.q + code
    return index


def is_involution(a: MatrixGF) -> bool:
    """Check A^2 = I."""
    return mat_mul(a, a) == identity(a.rows, a.spec)


def commutes_with(x: MatrixGF, d: MatrixGF) -> bool:
    """Check XD = DX."""
    return mat_mul(x, d) == mat_mul(d, x)


def centralizer_block_form(x: MatrixGF, m: int, r: int) -> bool:
    """
    Check the block pattern of matrices commuting with canonical_Dr(m, r).

    In the (m, r, m) block layout: X11 = X33 and X21 = X31 = X32 = 0.
    """
    n = 2 * m + r
    if x.rows != n or x.cols != n:
        raise DimensionMismatch(f"expected {n}x{n} matrix")
    top, mid = m, m + r
    for i in range(m):
        for j in range(m):
            if x.code(i, j) != x.code(mid + i, mid + j):
                return False
    for i in range(top, n):
        last_zero_col = top if i < mid else mid
        if any(x.code(i, j) for j in range(last_zero_col)):
            return False
    return True


@dataclass(frozen=True)
class Differential:
    """
    Linear operator D on V = F_q^n with D^2 = 0.

    Attributes:
        n: Dimension of V
        D: n x n matrix
        spec: Ground field
    """
    n: int
    D: MatrixGF
    spec: FieldSpec

    def __post_init__(self) -> None:
        """Validate shape, field and D^2 = 0."""
        if self.D.rows != self.n or self.D.cols != self.n:
            raise DimensionMismatch(f"differential must be {self.n}x{self.n}")
        if self.D.spec != self.spec:
            raise FieldMismatch(f"{self.D.spec} vs {self.spec}")
        if not mat_mul(self.D, self.D).is_zero:
            raise NotADifferential("matrix does not square to zero")

    @property
    def rank(self) -> int:
        """Rank of D, which is at most n/2."""
        return rank(self.D)

    def to_dict(self) -> Dict[str, Any]:
        """Convert differential to its JSON form."""
        return {'n': self.n, 'D': self.D.to_dict(), 'homology_dim': homology_dim(self)}


def make_differential(matrix: MatrixGF) -> Differential:
    """
    Validate a square matrix as a differential.

    Raises:
        DimensionMismatch: matrix not square
        NotADifferential: matrix^2 != 0
    """
    if not matrix.is_square:
        raise DimensionMismatch(f"differential must be square, got {matrix.rows}x{matrix.cols}")
    return Differential(matrix.rows, matrix, matrix.spec)


def homology_dim(d: Differential) -> int:
    """Dimension of ker D / im D, i.e. n - 2 rank(D)."""
    return d.n - 2 * d.rank


def canonical_Dr(m: int, r: int, spec: FieldSpec) -> Differential:
    """
    Canonical differential in the (e, f, e') basis order.

    Zero except the m x m identity in the top-right block.
    """
    if m < 0 or r < 0:
        raise ValueError(f"block counts must be non-negative, got m={m}, r={r}")
    n = 2 * m + r
    offset = m + r
    entries = [0] * (n * n)
    for i in range(m):
        entries[i * n + offset + i] = 1
    return Differential(n, MatrixGF(n, n, spec, tuple(entries)), spec)


def jordan_permutation(m: int, r: int) -> List[int]:
    """Column order turning the (e, f, e') basis into (e1, e1', ..., em, em', f1, ..., fr)."""
    order = []
    for i in range(m):
        order.extend([i, m + r + i])
    order.extend(range(m, m + r))
    return order


def jordan_Dr(m: int, r: int, spec: FieldSpec) -> Differential:
    """Direct sum of m 2x2 Jordan blocks and r 1x1 zero blocks."""
    n = 2 * m + r
    entries = [0] * (n * n)
    for i in range(m):
        entries[(2 * i) * n + 2 * i + 1] = 1
    return Differential(n, MatrixGF(n, n, spec, tuple(entries)), spec)


def permute_columns(a: MatrixGF, order: Sequence[int]) -> MatrixGF:
    """Matrix whose column k is column order[k] of a."""
    return MatrixGF.from_columns([a.column(j) for j in order], a.rows, a.spec)


@dataclass(frozen=True)
class NormalForm:
    """
    Decomposition of a differential into acyclic and trivial blocks.

    Attributes:
        r: Homology dimension
        m: Number of two-dimensional acyclic blocks
        P: Change of basis with P^-1 D P = canonical_Dr(m, r)
        layout: Basis order
    """
    r: int
    m: int
    P: MatrixGF
    layout: Layout = Layout.CANONICAL

    @property
    def n(self) -> int:
        """Dimension of V."""
        return 2 * self.m + self.r

    def canonical(self) -> Differential:
        """The canonical differential this form conjugates to."""
        if self.layout is Layout.JORDAN:
            return jordan_Dr(self.m, self.r, self.P.spec)
        return canonical_Dr(self.m, self.r, self.P.spec)

    def jordan_basis(self) -> 'NormalForm':
        """Same decomposition with basis reordered into 2x2 Jordan blocks."""
        if self.layout is Layout.JORDAN:
            return self
        P = permute_columns(self.P, jordan_permutation(self.m, self.r))
        return NormalForm(self.r, self.m, P, Layout.JORDAN)

    def verify(self, d: Differential) -> bool:
        """Check P is invertible and P^-1 D P equals the canonical form."""
        try:
            p_inv = inverse(self.P)
        except SingularMatrix:
            return False
        return mat_mul(p_inv, mat_mul(d.D, self.P)) == self.canonical().D

    def to_dict(self) -> Dict[str, Any]:
        """Convert normal form to its JSON form."""
        return {'r': self.r, 'm': self.m, 'layout': self.layout.value, 'P': self.P.to_dict()}


def normal_form(d: Differential) -> NormalForm:
    """
    Basis e_1..e_m, f_1..f_r, e'_1..e'_m realizing the normal form.

    e_i span im D, f_j extend them to a basis of ker D, D e'_i = e_i.

    Raises:
        InvariantBreach: the round trip P^-1 D P = D_r fails
    """
    spec = d.spec
    n = d.n
    ar = arithmetic(spec)
    reduced, pivots = _rref(d.D.to_rows(), n, ar)
    m = len(pivots)
    r = n - 2 * m

    images = [d.D.column(col) for col in pivots]

    pivot_set = set(pivots)
    kernel = []
    for free in range(n):
        if free in pivot_set:
            continue
        vec = [0] * n
        vec[free] = 1
        for row_idx, col in enumerate(pivots):
            vec[col] = ar.neg(reduced[row_idx][free])
        kernel.append(tuple(vec))

    chosen: List[Vector] = list(images)
    for vec in kernel:
        if len(chosen) == m + r:
            break
        if rank(MatrixGF.from_rows(chosen + [vec], spec)) > len(chosen):
            chosen.append(vec)

    # D applied to the unit vector at a pivot column is that column of D
    preimages = [tuple(1 if i == col else 0 for i in range(n)) for col in pivots]

    P = MatrixGF.from_columns(chosen + preimages, n, spec)
    form = NormalForm(r, m, P)
    if len(chosen) != m + r or not form.verify(d):
        raise InvariantBreach(f"normal form round trip failed for r={r}, m={m}")
    return form
