"""
Exactly uniform sampling of differentials and Monte Carlo estimation of
the homology-dimension distribution.

A sample draws r with probability c_r(q, n) / c(q, n) by inverse CDF on
exact counts, then conjugates canonical_Dr by a uniform invertible X.
Every matrix in an orbit has exactly |C_r| conjugating preimages, so the
result is uniform over all differentials.
"""

import random
from bisect import bisect_right
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, NamedTuple, Optional, Tuple

from scipy.stats import chi2

from . import gf2
from .exact_count import count_report
from .exceptions import InvariantBreach, RngFailure, ValidationError
from .finite_field import ff_from_order
from .linalg import (
    Differential,
    canonical_Dr,
    homology_dim,
    inverse,
    make_differential,
    mat_mul,
    matrix_from_index,
    matrix_index,
    rank,
)
from ..models.matrix import MatrixGF
from ..models.reports import EmpiricalReport
from ..utils.logger import CensusLogger

ALGORITHM = "MT19937"
SEED_LIMIT = 2 ** 64
DEFAULT_MAX_GL_ATTEMPTS = 10_000
DEFAULT_POOL_THRESHOLD = 5
DEFAULT_SIGNIFICANCE = 0.001


class RngState:
    """
    Seeded pseudorandom stream.

    Wraps Python's Mersenne Twister. Integers below a bound come from
    Random.randrange, which only consumes getrandbits output, so a seed
    reproduces the same stream on every platform.
    """

    algorithm = ALGORITHM

    def __init__(self, seed: int):
        """Seed the stream; seeds must lie in [0, 2^64)."""
        if not isinstance(seed, int) or not 0 <= seed < SEED_LIMIT:
            raise ValidationError(f"seed must be an integer in [0, 2^64), got {seed!r}")
        self.seed = seed
        self._random = random.Random(seed)
        self.draws = 0

    def randbelow(self, bound: int) -> int:
        """Uniform integer in [0, bound)."""
        self.draws += 1
        return self._random.randrange(bound)

    def spawn(self, worker: int) -> 'RngState':
        """Independent stream for a worker, seeded with seed XOR worker."""
        return RngState(self.seed ^ worker)

    def __repr__(self) -> str:
        """Seed, algorithm and draw count."""
        return f"RngState(seed={self.seed}, algorithm={self.algorithm}, draws={self.draws})"


class ChiSquareResult(NamedTuple):
    """Pearson goodness-of-fit outcome after pooling."""
    statistic: float
    dof: int
    p_value: float
    pooled: List[List[int]]
    lower_tail_p: float = 1.0


def _check_n(n: int) -> None:
    """Reject non-positive dimensions."""
    if not isinstance(n, int) or n < 1:
        raise ValidationError(f"n must be a positive integer, got {n!r}")


def random_gl(q: int, n: int, rng: RngState, max_attempts: int = DEFAULT_MAX_GL_ATTEMPTS) -> MatrixGF:
    """
    Uniform element of GL_n(q) by rejection.

    Each attempt draws one uniform enumeration index, i.e. i.i.d.
    uniform entries, and accepts when the matrix has full rank.

    Raises:
        RngFailure: no invertible matrix within max_attempts draws
    """
    _check_n(n)
    spec = ff_from_order(q)
    bound = q ** (n * n)
    for _ in range(max_attempts):
        candidate = matrix_from_index(rng.randbelow(bound), n, spec)
        if rank(candidate) == n:
            return candidate
    raise RngFailure(f"no invertible {n}x{n} matrix over GF({q}) in {max_attempts} attempts")


@lru_cache(maxsize=None)
def _cumulative_counts(q: int, n: int) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    """Sorted r values with running totals of c_r(q, n)."""
    report = count_report(q, n)
    rs = tuple(sorted(report.counts))
    cumulative = []
    running = 0
    for r in rs:
        running += report.counts[r]
        cumulative.append(running)
    return rs, tuple(cumulative)


def sample_r(q: int, n: int, rng: RngState) -> int:
    """Draw r with probability exactly c_r(q, n) / c(q, n)."""
    _check_n(n)
    rs, cumulative = _cumulative_counts(q, n)
    u = rng.randbelow(cumulative[-1])
    return rs[bisect_right(cumulative, u)]


def sample_differential(
    q: int,
    n: int,
    rng: RngState,
    max_attempts: int = DEFAULT_MAX_GL_ATTEMPTS
) -> Differential:
    """
    Uniformly random differential on F_q^n.

    Returns:
        X canonical_Dr(m, r) X^-1 with r from sample_r and X from random_gl
    """
    r = sample_r(q, n, rng)
    x = random_gl(q, n, rng, max_attempts)
    canonical = canonical_Dr((n - r) // 2, r, x.spec)
    return make_differential(mat_mul(mat_mul(x, canonical.D), inverse(x)))


def _canonical_masks(n: int, r: int) -> List[int]:
    """Row masks of canonical_Dr over F_2."""
    m = (n - r) // 2
    return [1 << (m + r + i) if i < m else 0 for i in range(n)]


def _random_gl_masks(n: int, rng: RngState, max_attempts: int) -> Tuple[List[int], List[int]]:
    """Same draws as random_gl at q = 2, kept as row masks with the inverse."""
    bound = 1 << (n * n)
    row_mask = (1 << n) - 1
    for _ in range(max_attempts):
        index = rng.randbelow(bound)
        rows = [(index >> (i * n)) & row_mask for i in range(n)]
        inv = gf2.inverse(rows)
        if inv is not None:
            return rows, inv
    raise RngFailure(f"no invertible {n}x{n} matrix over GF(2) in {max_attempts} attempts")


def _sample_worker(
    q: int,
    n: int,
    share: int,
    seed: int,
    track_matrices: bool,
    max_attempts: int
) -> Tuple[Dict[int, int], Optional[Dict[int, int]]]:
    """Draw share samples from stream seed; return histogram and optional matrix counts."""
    logger = CensusLogger(__name__)
    rng = RngState(seed)
    histogram: Dict[int, int] = {}
    matrices: Optional[Dict[int, int]] = {} if track_matrices else None
    logger.start_operation(f"sampling {share} differentials (seed {seed})", share)

    for done in range(1, share + 1):
        if q == 2:
            r = sample_r(2, n, rng)
            x, x_inv = _random_gl_masks(n, rng, max_attempts)
            d = gf2.mul(gf2.mul(x, _canonical_masks(n, r)), x_inv)
            observed = n - 2 * gf2.rank(d, n)
            if not gf2.square_is_zero(d):
                raise InvariantBreach("sampled matrix does not square to zero")
            if not gf2.is_involution([row ^ (1 << i) for i, row in enumerate(d)]):
                raise InvariantBreach("I + D is not an involution")
            index = sum(row << (i * n) for i, row in enumerate(d)) if track_matrices else 0
        else:
            r = sample_r(q, n, rng)
            x = random_gl(q, n, rng, max_attempts)
            canonical = canonical_Dr((n - r) // 2, r, x.spec)
            d_matrix = make_differential(mat_mul(mat_mul(x, canonical.D), inverse(x)))
            observed = homology_dim(d_matrix)
            index = matrix_index(d_matrix.D) if track_matrices else 0

        if observed != r:
            raise InvariantBreach(f"sampled r={r} but conjugate has homology {observed}")
        histogram[r] = histogram.get(r, 0) + 1
        if matrices is not None:
            matrices[index] = matrices.get(index, 0) + 1
        logger.log_progress(done, share)

    logger.complete_operation(f"sampling with seed {seed}")
    return histogram, matrices


def worker_shares(num_samples: int, workers: int) -> List[int]:
    """Split N into W shares: N // W, plus one for the first N % W workers."""
    base, extra = divmod(num_samples, workers)
    return [base + (1 if w < extra else 0) for w in range(workers)]


def chi_square(
    histogram: Dict[int, int],
    exact_probs: Dict[int, Fraction],
    num_samples: int,
    pool_threshold: float = DEFAULT_POOL_THRESHOLD
) -> ChiSquareResult:
    """
    Pearson chi-square of observed counts against exact probabilities.

    Categories are walked from the largest r down; a category whose
    expected count is below pool_threshold is merged into its smaller-r
    neighbour. If the smallest-r group is still below the threshold it
    joins the group above it.

    Args:
        histogram: r -> observed count
        exact_probs: r -> exact probability
        num_samples: Total number of samples N
        pool_threshold: Minimum expected count per category

    Returns:
        ChiSquareResult; p_value is the upper tail, lower_tail_p the
        lower tail of the same statistic
    """
    unknown = set(histogram) - set(exact_probs)
    if unknown:
        raise InvariantBreach(f"observed homology dimensions {sorted(unknown)} have probability zero")

    groups: List[Tuple[List[int], int, Fraction]] = []
    pending_rs: List[int] = []
    pending_obs = 0
    pending_exp = Fraction(0)
    for r in sorted(exact_probs, reverse=True):
        pending_rs.insert(0, r)
        pending_obs += histogram.get(r, 0)
        pending_exp += exact_probs[r] * num_samples
        if pending_exp >= pool_threshold:
            groups.append((pending_rs, pending_obs, pending_exp))
            pending_rs, pending_obs, pending_exp = [], 0, Fraction(0)
    if pending_rs:
        if groups:
            rs, obs, exp = groups.pop()
            groups.append((pending_rs + rs, pending_obs + obs, pending_exp + exp))
        else:
            groups.append((pending_rs, pending_obs, pending_exp))

    groups.reverse()
    pooled = [rs for rs, _, _ in groups]
    dof = len(groups) - 1
    if dof == 0:
        return ChiSquareResult(0.0, 0, 1.0, pooled)
    statistic = float(sum((obs - exp) ** 2 / exp for _, obs, exp in groups))
    p_value = float(chi2.sf(statistic, dof))
    return ChiSquareResult(statistic, dof, p_value, pooled, float(chi2.cdf(statistic, dof)))


def p_value_bracket(p_value: float) -> str:
    """Coarse significance bracket of a p-value."""
    if p_value >= 0.05:
        return "p>=0.05"
    if p_value >= 0.001:
        return "0.001<=p<0.05"
    return "p<0.001"


def monte_carlo(
    q: int,
    n: int,
    num_samples: int,
    seed: int = 0,
    workers: int = 1,
    pool_threshold: float = DEFAULT_POOL_THRESHOLD,
    significance: float = DEFAULT_SIGNIFICANCE,
    track_matrices: bool = False,
    max_gl_attempts: int = DEFAULT_MAX_GL_ATTEMPTS
) -> EmpiricalReport:
    """
    Sample N differentials and compare the histogram with exact p_r(q, n).

    Worker w draws its share from the stream seeded with seed XOR w;
    partial results are merged in worker order, so the report depends
    only on (q, n, N, seed, workers).

    Args:
        q: Field order
        n: Dimension
        num_samples: N >= 1
        seed: Base seed in [0, 2^64)
        workers: Number of independent streams; 1 runs in-process
        pool_threshold: Chi-square pooling threshold
        significance: p-value threshold for consistency
        track_matrices: Also count each sampled matrix by enumeration index
        max_gl_attempts: Rejection cap for random_gl

    Returns:
        EmpiricalReport
    """
    _check_n(n)
    ff_from_order(q)
    if not isinstance(num_samples, int) or num_samples < 1:
        raise ValidationError(f"number of samples must be >= 1, got {num_samples!r}")
    if not isinstance(workers, int) or workers < 1:
        raise ValidationError(f"workers must be >= 1, got {workers!r}")
    base_rng = RngState(seed)
    exact = count_report(q, n).probs

    logger = CensusLogger(__name__)
    logger.start_operation(f"Monte Carlo q={q} n={n} N={num_samples} workers={workers}")
    jobs = [
        (q, n, share, base_rng.spawn(w).seed, track_matrices, max_gl_attempts)
        for w, share in enumerate(worker_shares(num_samples, workers))
    ]
    if workers == 1:
        partials = [_sample_worker(*jobs[0])]
    else:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            partials = list(executor.map(_sample_worker, *zip(*jobs)))

    histogram: Dict[int, int] = {}
    matrices: Optional[Dict[int, int]] = {} if track_matrices else None
    for part_hist, part_matrices in partials:
        for r, count in part_hist.items():
            histogram[r] = histogram.get(r, 0) + count
        if matrices is not None and part_matrices is not None:
            for index, count in part_matrices.items():
                matrices[index] = matrices.get(index, 0) + count
    if sum(histogram.values()) != num_samples:
        raise InvariantBreach("merged histogram does not sum to N")

    result = chi_square(histogram, exact, num_samples, pool_threshold)
    logger.complete_operation(f"Monte Carlo q={q} n={n}")
    logger.info(f"chi-square {result.statistic:.4f} on {result.dof} dof, p={result.p_value:.4g}")

    return EmpiricalReport(
        q=q,
        n=n,
        num_samples=num_samples,
        seed=seed,
        workers=workers,
        algorithm=ALGORITHM,
        histogram=dict(sorted(histogram.items())),
        exact_probs=exact,
        chi_square=result.statistic,
        dof=result.dof,
        p_value=result.p_value,
        lower_tail_p=result.lower_tail_p,
        p_value_bracket=p_value_bracket(result.p_value),
        significance=significance,
        pooled=result.pooled,
        involution_checked=(q == 2),
        matrix_counts=matrices
    )
