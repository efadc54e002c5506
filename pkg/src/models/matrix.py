"""
Dense matrix data model over a finite field.
"""

from dataclasses import dataclass
from typing import Any, Dict, List, Sequence, Tuple

from .field import FieldElement, FieldSpec


@dataclass(frozen=True)
class MatrixGF:
    """
    Dense row-major matrix over F_q.

    Entries are stored as integer element codes (see FieldSpec); the
    JSON form spells each one out as its FieldElement coefficients.

    Attributes:
        rows: Number of rows
        cols: Number of columns
        spec: Ground field
        entries: rows * cols element codes, row-major
    """
    rows: int
    cols: int
    spec: FieldSpec
    entries: Tuple[int, ...]

    def __post_init__(self) -> None:
        """Validate shape and entry range."""
        if self.rows < 0 or self.cols < 0:
            raise ValueError(f"Invalid shape {self.rows}x{self.cols}")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"Expected {self.rows * self.cols} entries, got {len(self.entries)}"
            )
        q = self.spec.q
        if any(not 0 <= code < q for code in self.entries):
            raise ValueError(f"Entry outside field of order {q}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], spec: FieldSpec) -> 'MatrixGF':
        """
        Build a matrix from nested lists of element codes.

        Args:
            rows: List of rows of integer codes
            spec: Ground field

        Returns:
            Matrix instance
        """
        n_rows = len(rows)
        n_cols = len(rows[0]) if n_rows else 0
        if any(len(row) != n_cols for row in rows):
            raise ValueError("Ragged row lengths")
        return cls(n_rows, n_cols, spec, tuple(code for row in rows for code in row))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], n_rows: int, spec: FieldSpec) -> 'MatrixGF':
        """Build a matrix whose columns are the given code vectors."""
        return cls(
            n_rows, len(columns), spec,
            tuple(columns[j][i] for i in range(n_rows) for j in range(len(columns)))
        )

    @property
    def is_square(self) -> bool:
        """Check if matrix is square."""
        return self.rows == self.cols

    @property
    def is_zero(self) -> bool:
        """Check if every entry is zero."""
        return not any(self.entries)

    def code(self, i: int, j: int) -> int:
        """Element code at (i, j)."""
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Tuple[int, ...]:
        """Row i as codes."""
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> Tuple[int, ...]:
        """Column j as codes."""
        return self.entries[j::self.cols] if self.cols else ()

    def to_rows(self) -> List[List[int]]:
        """Nested list copy of the codes."""
        return [list(self.row(i)) for i in range(self.rows)]

    def to_dict(self) -> Dict[str, Any]:
        """Convert matrix to its JSON form."""
        return {
            'rows': self.rows,
            'cols': self.cols,
            'spec': self.spec.to_dict(),
            'entries': [self.spec.element(code).to_list() for code in self.entries]
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'MatrixGF':
        """Create MatrixGF from its JSON form."""
        spec = FieldSpec.from_dict(data['spec'])
        entries = tuple(spec.code(FieldElement(tuple(c))) for c in data['entries'])
        return cls(int(data['rows']), int(data['cols']), spec, entries)

    def __str__(self) -> str:
        """Grid of element codes."""
        return "\n".join(" ".join(str(c) for c in self.row(i)) for i in range(self.rows))

    def __repr__(self) -> str:
        """Detailed string representation."""
        return f"MatrixGF({self.rows}x{self.cols} over {self.spec})"
