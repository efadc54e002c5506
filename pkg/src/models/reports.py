"""
Report data models for exact counts, limits, Monte Carlo runs and
exhaustive verification.

Exact values are serialized as "num/den" strings next to a decimal
rendering whose precision is recorded in the report.
"""

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, List, Optional


class Parity(Enum):
    """Parity class of the dimension n in a limit."""
    EVEN = "even"
    ODD = "odd"


class ScanMethod(Enum):
    """Exhaustive scan implementations."""
    AUTO = "auto"
    GF2 = "gf2"
    NUMPY = "numpy"
    PYTHON = "python"


def fraction_string(value: Fraction) -> str:
    """Render a rational as "num/den" (lowest terms, positive denominator)."""
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def decimal_string(value: Fraction, precision: int) -> str:
    """
    Render a rational with a fixed number of decimals.

    Rounds half away from zero using integer arithmetic only.

    Args:
        value: Exact rational
        precision: Number of digits after the decimal point

    Returns:
        Decimal string
    """
    value = Fraction(value)
    negative = value < 0
    magnitude = -value if negative else value
    scale = 10 ** precision
    scaled = (magnitude.numerator * scale * 2 + magnitude.denominator) // (2 * magnitude.denominator)
    whole, frac = divmod(scaled, scale)
    sign = "-" if negative and scaled else ""
    if precision == 0:
        return f"{sign}{whole}"
    return f"{sign}{whole}.{frac:0{precision}d}"


def exact_entry(value: Fraction, precision: int) -> Dict[str, str]:
    """JSON pair of exact and decimal renderings."""
    return {'exact': fraction_string(value), 'decimal': decimal_string(value, precision)}


@dataclass
class CountReport:
    """
    Exact homology-dimension census of differentials on F_q^n.

    Attributes:
        q: Field order
        n: Dimension of V
        counts: r -> c_r(q, n) for r = n mod 2, ..., n
        total: c(q, n)
        probs: r -> p_r(q, n)
    """
    q: int
    n: int
    counts: Dict[int, int]
    total: int
    probs: Dict[int, Fraction]

    @property
    def is_consistent(self) -> bool:
        """Check total = sum of counts and probabilities sum to one."""
        return self.total == sum(self.counts.values()) and sum(self.probs.values()) == 1

    def to_dict(self, precision: int) -> Dict[str, Any]:
        """Convert report to its JSON form."""
        return {
            'kind': 'count',
            'q': self.q,
            'n': self.n,
            'precision': precision,
            'total': str(self.total),
            'counts': {str(r): str(c) for r, c in sorted(self.counts.items())},
            'probs': {str(r): exact_entry(p, precision) for r, p in sorted(self.probs.items())}
        }

    def to_rows(self, precision: int) -> List[Dict[str, Any]]:
        """Flat rows for CSV output."""
        return [
            {
                'q': self.q,
                'n': self.n,
                'r': r,
                'count': str(self.counts[r]),
                'total': str(self.total),
                'probability_exact': fraction_string(self.probs[r]),
                'probability': decimal_string(self.probs[r], precision),
                'precision': precision
            }
            for r in sorted(self.counts)
        ]


@dataclass
class LimitReport:
    """
    Truncated-series limit probabilities p_r(q) as n -> infinity.

    Attributes:
        q: Field order
        parity: Parity class of n
        eps: Requested absolute error
        kmax: Index of the last series term included
        series_value: Partial sum of S (even) or S' (odd)
        tail_bound: Certified bound on the omitted tail
        r_cap: Largest r reported
        p_limit: r -> rational approximation of p_r(q), error <= eps
    """
    q: int
    parity: Parity
    eps: Fraction
    kmax: int
    series_value: Fraction
    tail_bound: Fraction
    r_cap: int
    p_limit: Dict[int, Fraction]

    def to_dict(self, precision: int) -> Dict[str, Any]:
        """Convert report to its JSON form."""
        return {
            'kind': 'limit',
            'q': self.q,
            'parity': self.parity.value,
            'precision': precision,
            'eps': fraction_string(self.eps),
            'kmax': self.kmax,
            'r_cap': self.r_cap,
            'series_value': exact_entry(self.series_value, precision),
            'tail_bound': exact_entry(self.tail_bound, precision),
            'p_limit': {str(r): exact_entry(p, precision) for r, p in sorted(self.p_limit.items())}
        }

    def to_rows(self, precision: int) -> List[Dict[str, Any]]:
        """Flat rows for CSV output."""
        return [
            {
                'q': self.q,
                'parity': self.parity.value,
                'r': r,
                'p_limit_exact': fraction_string(p),
                'p_limit': decimal_string(p, precision),
                'eps': decimal_string(self.eps, precision),
                'kmax': self.kmax,
                'precision': precision
            }
            for r, p in sorted(self.p_limit.items())
        ]


@dataclass
class EmpiricalReport:
    """
    Monte Carlo histogram of homology dimensions against exact probabilities.

    Attributes:
        q: Field order
        n: Dimension of V
        num_samples: Number of sampled differentials N
        seed: Base seed
        workers: Number of independent worker streams
        algorithm: Pseudorandom generator identifier
        histogram: r -> observed count
        exact_probs: r -> p_r(q, n)
        chi_square: Pearson statistic after pooling
        dof: Degrees of freedom
        p_value: Upper-tail probability of chi_square
        lower_tail_p: Lower-tail probability of chi_square
        p_value_bracket: Coarse significance bracket
        significance: Two-sided threshold for consistent
        pooled: Groups of r merged into one category
        involution_checked: Whether (I+D)^2 = I was checked (q = 2)
        matrix_counts: Optional enumeration index -> count
    """
    q: int
    n: int
    num_samples: int
    seed: int
    workers: int
    algorithm: str
    histogram: Dict[int, int]
    exact_probs: Dict[int, Fraction]
    chi_square: float
    dof: int
    p_value: float
    p_value_bracket: str
    significance: float
    lower_tail_p: float = 1.0
    pooled: List[List[int]] = field(default_factory=list)
    involution_checked: bool = False
    matrix_counts: Optional[Dict[int, int]] = None

    @property
    def consistent(self) -> bool:
        """
        Check the histogram is consistent with the exact distribution.

        The upper tail must exceed significance; a lower tail below
        significance / 2 flags a fit too close to be random.
        """
        return self.p_value > self.significance and self.lower_tail_p > self.significance / 2

    def to_dict(self, precision: int) -> Dict[str, Any]:
        """Convert report to its JSON form."""
        data = {
            'kind': 'sample',
            'q': self.q,
            'n': self.n,
            'precision': precision,
            'num_samples': self.num_samples,
            'seed': self.seed,
            'workers': self.workers,
            'algorithm': self.algorithm,
            'histogram': {str(r): c for r, c in sorted(self.histogram.items())},
            'exact_probs': {str(r): exact_entry(p, precision) for r, p in sorted(self.exact_probs.items())},
            'chi_square': self.chi_square,
            'dof': self.dof,
            'p_value': self.p_value,
            'lower_tail_p': self.lower_tail_p,
            'p_value_bracket': self.p_value_bracket,
            'significance': self.significance,
            'consistent': self.consistent,
            'pooled': self.pooled,
            'involution_checked': self.involution_checked
        }
        if self.matrix_counts is not None:
            data['matrix_counts'] = {str(k): v for k, v in sorted(self.matrix_counts.items())}
        return data

    def to_rows(self, precision: int) -> List[Dict[str, Any]]:
        """Flat rows for CSV output."""
        return [
            {
                'q': self.q,
                'n': self.n,
                'r': r,
                'observed': self.histogram.get(r, 0),
                'expected': decimal_string(p * self.num_samples, precision),
                'probability': decimal_string(p, precision),
                'num_samples': self.num_samples,
                'seed': self.seed,
                'chi_square': self.chi_square,
                'dof': self.dof,
                'p_value': self.p_value,
                'precision': precision
            }
            for r, p in sorted(self.exact_probs.items())
        ]


@dataclass
class CentralizerCheck:
    """Exhaustive centralizer size against the closed formula."""
    q: int
    m: int
    r: int
    scanned: int
    formula: int

    @property
    def agrees(self) -> bool:
        """Check scan equals formula."""
        return self.scanned == self.formula

    def to_dict(self) -> Dict[str, Any]:
        """Convert check to its JSON form."""
        return {
            'q': self.q, 'm': self.m, 'r': self.r,
            'scanned': str(self.scanned), 'formula': str(self.formula),
            'agrees': self.agrees
        }


@dataclass
class OracleReport:
    """
    Brute-force census of all n x n matrices over F_q.

    Attributes:
        q: Field order
        n: Dimension
        method: Scan implementation used
        workers: Number of scan workers
        total_matrices: q^(n^2)
        differential_count: Matrices with M^2 = 0
        counts: r -> enumerated count
        expected: r -> c_r(q, n) from the closed formula
        wall_time: Scan duration in seconds
        involution_count: Matrices with A^2 = I (q = 2 only)
        centralizers: Centralizer scans run alongside
    """
    q: int
    n: int
    method: ScanMethod
    workers: int
    total_matrices: int
    differential_count: int
    counts: Dict[int, int]
    expected: Dict[int, int]
    wall_time: float = 0.0
    involution_count: Optional[int] = None
    centralizers: List[CentralizerCheck] = field(default_factory=list)

    @property
    def agreement(self) -> Dict[int, bool]:
        """Per-r agreement of scan and formula."""
        keys = set(self.counts) | set(self.expected)
        return {r: self.counts.get(r, 0) == self.expected.get(r, 0) for r in sorted(keys)}

    @property
    def agrees(self) -> bool:
        """Check every comparison in the report agrees."""
        ok = all(self.agreement.values()) and sum(self.counts.values()) == self.differential_count
        if self.involution_count is not None:
            ok = ok and self.involution_count == self.differential_count
        return ok and all(check.agrees for check in self.centralizers)

    def to_dict(self, include_timing: bool = False) -> Dict[str, Any]:
        """Convert report to its JSON form."""
        data = {
            'kind': 'oracle',
            'q': self.q,
            'n': self.n,
            'method': self.method.value,
            'workers': self.workers,
            'total_matrices': str(self.total_matrices),
            'differential_count': str(self.differential_count),
            'counts': {str(r): str(c) for r, c in sorted(self.counts.items())},
            'expected': {str(r): str(c) for r, c in sorted(self.expected.items())},
            'agreement': {str(r): ok for r, ok in self.agreement.items()},
            'involution_count': None if self.involution_count is None else str(self.involution_count),
            'centralizers': [check.to_dict() for check in self.centralizers],
            'agrees': self.agrees
        }
        if include_timing:
            data['wall_time'] = self.wall_time
        return data

    def to_rows(self) -> List[Dict[str, Any]]:
        """Flat rows for CSV output."""
        return [
            {
                'q': self.q,
                'n': self.n,
                'r': r,
                'enumerated': str(self.counts.get(r, 0)),
                'formula': str(self.expected.get(r, 0)),
                'agrees': ok,
                'total_matrices': str(self.total_matrices),
                'method': self.method.value
            }
            for r, ok in self.agreement.items()
        ]


@dataclass
class TableRow:
    """One (q, n) cell of a probability sweep."""
    q: int
    n: int
    probs: Dict[int, Fraction]

    def to_dict(self, precision: int) -> Dict[str, Any]:
        """Convert row to its JSON form."""
        return {
            'q': self.q,
            'n': self.n,
            'probs': {str(r): exact_entry(p, precision) for r, p in sorted(self.probs.items())}
        }

    def to_row(self, precision: int, r_values: List[int]) -> Dict[str, Any]:
        """Flat row with one p_r column per requested r."""
        row: Dict[str, Any] = {'q': self.q, 'n': self.n}
        for r in r_values:
            row[f'p_{r}'] = decimal_string(self.probs[r], precision) if r in self.probs else ''
        row['sum_exact'] = fraction_string(sum(self.probs.values(), Fraction(0)))
        row['precision'] = precision
        return row


@dataclass
class TableReport:
    """Sweep of p_r(q, n) over a grid of (q, n)."""
    rows: List[TableRow]

    @property
    def r_values(self) -> List[int]:
        """Every r that occurs in some row."""
        return sorted({r for row in self.rows for r in row.probs})

    def to_dict(self, precision: int) -> Dict[str, Any]:
        """Convert sweep to its JSON form."""
        return {
            'kind': 'table',
            'precision': precision,
            'rows': [row.to_dict(precision) for row in self.rows]
        }

    def to_rows(self, precision: int) -> List[Dict[str, Any]]:
        """Flat rows for CSV output."""
        r_values = self.r_values
        return [row.to_row(precision, r_values) for row in self.rows]


@dataclass
class VerifyRun:
    """Oracle reports for n = 1 .. max_n over one field."""
    q: int
    max_n: int
    reports: List[OracleReport]

    @property
    def agrees(self) -> bool:
        """Check every report agrees with the formulas."""
        return all(report.agrees for report in self.reports)

    def to_dict(self, include_timing: bool = False) -> Dict[str, Any]:
        """Convert run to its JSON form."""
        return {
            'kind': 'verify',
            'q': self.q,
            'max_n': self.max_n,
            'agrees': self.agrees,
            'reports': [report.to_dict(include_timing) for report in self.reports]
        }

    def to_rows(self) -> List[Dict[str, Any]]:
        """Flat rows for CSV output."""
        return [row for report in self.reports for row in report.to_rows()]
