"""Bit-packed GF(2) matrix helpers: each row is an int, bit j = column j."""

from typing import List, Optional, Sequence

from ..models.field import FieldSpec
from ..models.matrix import MatrixGF


def to_masks(matrix: MatrixGF) -> List[int]:
    """Pack a GF(2) matrix into row masks."""
    masks = []
    for i in range(matrix.rows):
        mask = 0
        for j, bit in enumerate(matrix.row(i)):
            if bit:
                mask |= 1 << j
        masks.append(mask)
    return masks


def from_masks(masks: Sequence[int], n_cols: int, spec: FieldSpec) -> MatrixGF:
    """Unpack row masks into a MatrixGF."""
    return MatrixGF(
        len(masks), n_cols, spec,
        tuple((mask >> j) & 1 for mask in masks for j in range(n_cols))
    )


def mul(a: Sequence[int], b: Sequence[int]) -> List[int]:
    """Product of row-mask matrices: row i of AB is the XOR of rows j of B with bit j set in row i of A."""
    out = []
    for row in a:
        acc = 0
        j = 0
        while row:
            if row & 1:
                acc ^= b[j]
            row >>= 1
            j += 1
        out.append(acc)
    return out


def rank(rows: Sequence[int], n_cols: int) -> int:
    """Rank via Gaussian elimination on row masks."""
    work = list(rows)
    r = 0
    for col in range(n_cols):
        bit = 1 << col
        pivot = next((k for k in range(r, len(work)) if work[k] & bit), None)
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        for k in range(len(work)):
            if k != r and work[k] & bit:
                work[k] ^= work[r]
        r += 1
        if r == len(work):
            break
    return r


def inverse(rows: Sequence[int]) -> Optional[List[int]]:
    """Gauss-Jordan inverse of a square row-mask matrix, or None if singular."""
    n = len(rows)
    left = list(rows)
    right = [1 << i for i in range(n)]
    for col in range(n):
        bit = 1 << col
        pivot = next((k for k in range(col, n) if left[k] & bit), None)
        if pivot is None:
            return None
        left[col], left[pivot] = left[pivot], left[col]
        right[col], right[pivot] = right[pivot], right[col]
        for k in range(n):
            if k != col and left[k] & bit:
                left[k] ^= left[col]
                right[k] ^= right[col]
    return right


def square_is_zero(rows: Sequence[int]) -> bool:
    """Check A^2 = 0."""
    return not any(mul(rows, rows))


def is_involution(rows: Sequence[int]) -> bool:
    """Check A^2 = I."""
    return mul(rows, rows) == [1 << i for i in range(len(rows))]
