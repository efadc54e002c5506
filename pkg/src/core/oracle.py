"""
Brute-force enumeration of all n x n matrices over F_q.

The oracle is deliberately independent of the counting formulas: it
walks enumeration indices 0 .. q^(n^2) - 1 (see linalg.matrix_from_index)
and tests every matrix. Three scan implementations give identical
results:

  gf2     numpy uint64 row masks, q = 2 only
  numpy   digit arrays with matmul mod p, prime fields
  python  MatrixGF reference path, any field

Index intervals are split across workers and partial histograms are
merged by addition.
"""

from concurrent.futures import ProcessPoolExecutor
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Tuple, Union

import numpy as np

from .exact_count import centralizer_order, count_r
from .exceptions import InvariantBreach, TooLarge, ValidationError
from .finite_field import ff_from_order
from .linalg import (
    canonical_Dr,
    centralizer_block_form,
    commutes_with,
    is_involution,
    make_differential,
    mat_mul,
    matrix_from_index,
    normal_form,
    rank,
)
from ..models.reports import CentralizerCheck, OracleReport, ScanMethod
from ..utils.logger import CensusLogger

DEFAULT_MAX_COST = 2 ** 36
DEFAULT_CHUNK_SIZE = 2 ** 18

# int64 digit arithmetic needs every index below this
_VECTOR_LIMIT = 2 ** 62
# largest digit table held per base
_TABLE_LIMIT = 2 ** 18

Histogram = Dict[int, int]


def check_cost(q: int, n: int, max_cost: int = DEFAULT_MAX_COST) -> int:
    """
    Feasibility guard: q^(n^2) must not exceed max_cost.

    Returns:
        Number of matrices to scan

    Raises:
        TooLarge: the scan exceeds max_cost
    """
    cost = q ** (n * n)
    if cost > max_cost:
        raise TooLarge(f"scanning GF({q}) {n}x{n} needs {q}^{n * n} = {cost} matrices, limit is {max_cost}")
    return cost


def resolve_method(q: int, method: Union[ScanMethod, str], total: int) -> ScanMethod:
    """Pick the scan implementation for q, validating an explicit choice."""
    try:
        method = ScanMethod(method)
    except (ValueError, TypeError) as e:
        choices = [m.value for m in ScanMethod]
        raise ValidationError(f"unknown scan method {method!r}, expected one of {choices}") from e
    spec = ff_from_order(q)
    if method is ScanMethod.GF2 and q != 2:
        raise ValidationError("gf2 scan requires q = 2")
    if method is ScanMethod.NUMPY and not spec.is_prime_field:
        raise ValidationError(f"numpy scan requires a prime field, got q={q}")
    if method is not ScanMethod.AUTO:
        return method
    if total >= _VECTOR_LIMIT:
        return ScanMethod.PYTHON
    if q == 2:
        return ScanMethod.GF2
    return ScanMethod.NUMPY if spec.is_prime_field else ScanMethod.PYTHON


def _intervals(total: int, workers: int) -> List[Tuple[int, int]]:
    """Split [0, total) into one contiguous interval per worker."""
    return [(w * total // workers, (w + 1) * total // workers) for w in range(workers)]


def _chunks(start: int, stop: int, chunk_size: int):
    """Yield [lo, hi) batches of at most chunk_size indices."""
    for lo in range(start, stop, chunk_size):
        yield lo, min(lo + chunk_size, stop)


def _merge(partials: List[Histogram]) -> Histogram:
    """Sum partial histograms key by key."""
    merged: Histogram = {}
    for part in partials:
        for key, count in part.items():
            merged[key] = merged.get(key, 0) + count
    return dict(sorted(merged.items()))


# ----------------------------------------------------------------------
# vectorised kernels
# ----------------------------------------------------------------------

def _gf2_rows(indices: np.ndarray, n: int) -> List[np.ndarray]:
    """Row masks of the packed F_2 matrices with the given indices."""
    mask = np.uint64((1 << n) - 1)
    return [(indices >> np.uint64(i * n)) & mask for i in range(n)]


def _gf2_square(rows: List[np.ndarray]) -> List[np.ndarray]:
    """Row masks of A^2 for a stack of packed F_2 matrices."""
    n = len(rows)
    out = []
    for i in range(n):
        acc = np.zeros_like(rows[i])
        for j in range(n):
            bit = (rows[i] >> np.uint64(j)) & np.uint64(1)
            acc ^= rows[j] * bit
        out.append(acc)
    return out


@lru_cache(maxsize=None)
def _digit_table(p: int, k: int) -> np.ndarray:
    """Row t holds the k base-p digits of t, least significant first."""
    grid = np.indices((p,) * k, dtype=np.int64).reshape(k, -1)
    return np.ascontiguousarray(grid[::-1].T)


def _digit_matrices(lo: int, hi: int, n: int, p: int) -> np.ndarray:
    """Stack of the matrices with enumeration indices lo .. hi - 1."""
    size = n * n
    k = 1
    while k < size and p ** (k + 1) <= _TABLE_LIMIT:
        k += 1
    block = p ** k
    table = _digit_table(p, k)
    out = np.empty((hi - lo, size), dtype=np.int64)
    pos = 0
    for high in range(lo // block, (hi - 1) // block + 1):
        a = max(lo, high * block)
        b = min(hi, (high + 1) * block)
        out[pos:pos + b - a, :k] = table[a - high * block:b - high * block]
        rest = high
        for col in range(k, size):
            rest, out[pos:pos + b - a, col] = divmod(rest, p)
        pos += b - a
    return out.reshape(-1, n, n)


def _invertible_mod_p(matrices: np.ndarray, p: int) -> np.ndarray:
    """Vectorised Gaussian elimination mod a prime p; True where the matrix is invertible."""
    a = matrices % p
    count, n = a.shape[0], a.shape[1]
    inverses = np.array([0] + [pow(x, p - 2, p) for x in range(1, p)], dtype=np.int64)
    rows = np.arange(count)
    ok = np.ones(count, dtype=bool)
    for col in range(n):
        nonzero = a[:, col:, col] != 0
        ok &= nonzero.any(axis=1)
        pivot = col + nonzero.argmax(axis=1)
        top = a[rows, pivot].copy()
        a[rows, pivot] = a[rows, col]
        a[rows, col] = top
        a[:, col] = (a[:, col] * inverses[a[:, col, col]][:, None]) % p
        factors = a[:, col + 1:, col].copy()
        a[:, col + 1:] = (a[:, col + 1:] - factors[:, :, None] * a[:, None, col]) % p
    return ok


def _commutes_mask(matrices: np.ndarray, d: np.ndarray, p: int) -> np.ndarray:
    """X D == D X for every X in the stack, D with at most one nonzero per row and column."""
    src, dst = np.nonzero(d)
    values = d[src, dst]
    xd = np.zeros_like(matrices)
    xd[:, :, dst] = matrices[:, :, src] * values
    dx = np.zeros_like(matrices)
    dx[:, src, :] = matrices[:, dst, :] * values[:, None]
    return ~np.any((xd - dx) % p, axis=(1, 2))


def _block_form_mask(matrices: np.ndarray, m: int, r: int) -> np.ndarray:
    """Vectorised centralizer_block_form."""
    mid = m + r
    ok = np.all(matrices[:, :m, :m] == matrices[:, mid:, mid:], axis=(1, 2))
    ok &= ~np.any(matrices[:, m:, :m], axis=(1, 2))
    ok &= ~np.any(matrices[:, mid:, m:mid], axis=(1, 2))
    return ok


# ----------------------------------------------------------------------
# per-interval scans (top level so they pickle into worker processes)
# ----------------------------------------------------------------------

def _differential_survivors(q: int, n: int, lo: int, hi: int, method: ScanMethod) -> List[int]:
    """Indices in [lo, hi) whose matrix squares to zero."""
    if method is ScanMethod.GF2:
        rows = _gf2_rows(np.arange(lo, hi, dtype=np.uint64), n)
        zero = np.logical_and.reduce([row == 0 for row in _gf2_square(rows)])
        return [lo + int(k) for k in np.flatnonzero(zero)]
    if method is ScanMethod.NUMPY:
        matrices = _digit_matrices(lo, hi, n, q)
        zero = ~np.any(np.matmul(matrices, matrices) % q, axis=(1, 2))
        return [lo + int(k) for k in np.flatnonzero(zero)]
    spec = ff_from_order(q)
    survivors = []
    for index in range(lo, hi):
        matrix = matrix_from_index(index, n, spec)
        if mat_mul(matrix, matrix).is_zero:
            survivors.append(index)
    return survivors


def _scan_differentials(
    q: int,
    n: int,
    start: int,
    stop: int,
    method: ScanMethod,
    chunk_size: int,
    check_normal_forms: bool
) -> Histogram:
    """Histogram of homology dimensions over indices [start, stop)."""
    logger = CensusLogger(__name__)
    spec = ff_from_order(q)
    counts: Histogram = {}
    n_chunks = max(1, -(-(stop - start) // chunk_size))
    for done, (lo, hi) in enumerate(_chunks(start, stop, chunk_size), start=1):
        for index in _differential_survivors(q, n, lo, hi, method):
            matrix = matrix_from_index(index, n, spec)
            r = n - 2 * rank(matrix)
            if check_normal_forms:
                form = normal_form(make_differential(matrix))
                if form.r != r:
                    raise InvariantBreach(f"normal form of index {index} has r={form.r}, expected {r}")
            counts[r] = counts.get(r, 0) + 1
        logger.log_progress(done, n_chunks, f"[{start}, {stop})")
    return counts


def _scan_involutions(n: int, start: int, stop: int, method: ScanMethod, chunk_size: int) -> Histogram:
    """{1: count} of involutions over indices [start, stop)."""
    spec = ff_from_order(2)
    found = 0
    for lo, hi in _chunks(start, stop, chunk_size):
        if method is ScanMethod.GF2:
            rows = _gf2_rows(np.arange(lo, hi, dtype=np.uint64), n)
            square = _gf2_square(rows)
            ok = np.logical_and.reduce([row == np.uint64(1 << i) for i, row in enumerate(square)])
            found += int(np.count_nonzero(ok))
        elif method is ScanMethod.NUMPY:
            matrices = _digit_matrices(lo, hi, n, 2)
            square = np.matmul(matrices, matrices) % 2
            found += int(np.count_nonzero(np.all(square == np.eye(n, dtype=np.int64), axis=(1, 2))))
        else:
            found += sum(1 for index in range(lo, hi) if is_involution(matrix_from_index(index, n, spec)))
    return {1: found}


def _scan_centralizer(
    q: int,
    m: int,
    r: int,
    start: int,
    stop: int,
    method: ScanMethod,
    chunk_size: int
) -> Histogram:
    """{1: count} of invertible matrices in [start, stop) commuting with canonical_Dr(m, r)."""
    n = 2 * m + r
    spec = ff_from_order(q)
    canonical = canonical_Dr(m, r, spec).D
    d = np.array(canonical.to_rows(), dtype=np.int64)
    found = 0
    for lo, hi in _chunks(start, stop, chunk_size):
        if method in (ScanMethod.GF2, ScanMethod.NUMPY):
            matrices = _digit_matrices(lo, hi, n, q)
            commuting = matrices[_commutes_mask(matrices, d, q)]
            if not np.all(_block_form_mask(commuting, m, r)):
                raise InvariantBreach(f"commuting matrix outside block form for m={m}, r={r}")
            found += int(np.count_nonzero(_invertible_mod_p(commuting, q)))
        else:
            for index in range(lo, hi):
                x = matrix_from_index(index, n, spec)
                if commutes_with(x, canonical) and rank(x) == n:
                    if not centralizer_block_form(x, m, r):
                        raise InvariantBreach(f"commuting matrix {index} outside block form for m={m}, r={r}")
                    found += 1
    return {1: found}


def _run_partitioned(
    scan: Callable[..., Histogram],
    head: Tuple,
    tail: Tuple,
    total: int,
    workers: int
) -> Histogram:
    """Run scan(*head, start, stop, *tail) over worker intervals and merge."""
    jobs = [head + interval + tail for interval in _intervals(total, workers)]
    if workers == 1:
        return _merge([scan(*jobs[0])])
    with ProcessPoolExecutor(max_workers=workers) as executor:
        return _merge(list(executor.map(scan, *zip(*jobs))))


def _check_workers(workers: int, chunk_size: int) -> None:
    """Reject non-positive worker counts and chunk sizes."""
    if not isinstance(workers, int) or workers < 1:
        raise ValidationError(f"workers must be >= 1, got {workers!r}")
    if not isinstance(chunk_size, int) or chunk_size < 1:
        raise ValidationError(f"chunk size must be >= 1, got {chunk_size!r}")


# ----------------------------------------------------------------------
# public operations
# ----------------------------------------------------------------------

def enumerate_differentials(
    q: int,
    n: int,
    max_cost: int = DEFAULT_MAX_COST,
    method: Union[ScanMethod, str] = ScanMethod.AUTO,
    workers: int = 1,
    chunk_size: int = DEFAULT_CHUNK_SIZE,
    check_normal_forms: bool = False
) -> OracleReport:
    """
    Count differentials on F_q^n by exhaustive scan.

    Args:
        q: Field order
        n: Dimension, n >= 1
        max_cost: Feasibility guard on q^(n^2)
        method: auto, gf2, numpy or python
        workers: Number of index intervals scanned in parallel
        chunk_size: Matrices per vectorised batch
        check_normal_forms: Also run the normal-form round trip on every
            differential found

    Returns:
        OracleReport comparing scanned counts with count_r

    Raises:
        TooLarge: q^(n^2) > max_cost
    """
    ff_from_order(q)
    if not isinstance(n, int) or n < 1:
        raise ValidationError(f"n must be a positive integer, got {n!r}")
    _check_workers(workers, chunk_size)
    total = check_cost(q, n, max_cost)
    chosen = resolve_method(q, method, total)

    logger = CensusLogger(__name__)
    logger.start_operation(f"scan of GF({q}) {n}x{n} matrices ({chosen.value})", total)
    counts = _run_partitioned(
        _scan_differentials, (q, n), (chosen, chunk_size, check_normal_forms), total, workers
    )
    wall_time = logger.complete_operation(f"scan of GF({q}) {n}x{n} matrices")

    expected = {r: count_r(q, n, r) for r in range(n % 2, n + 1, 2)}
    return OracleReport(
        q=q,
        n=n,
        method=chosen,
        workers=workers,
        total_matrices=total,
        differential_count=sum(counts.values()),
        counts=counts,
        expected=expected,
        wall_time=wall_time
    )


def enumerate_centralizer(
    q: int,
    m: int,
    r: int,
    max_cost: int = DEFAULT_MAX_COST,
    method: Union[ScanMethod, str] = ScanMethod.AUTO,
    workers: int = 1,
    chunk_size: int = DEFAULT_CHUNK_SIZE
) -> int:
    """
    Count invertible X with X D_r = D_r X by exhaustive scan.

    Every commuting X is also checked against the block pattern
    X11 = X33, X21 = X31 = X32 = 0.

    Raises:
        TooLarge: q^(n^2) > max_cost, n = 2m + r
        InvariantBreach: a commuting invertible X breaks the block pattern
    """
    ff_from_order(q)
    if m < 0 or r < 0 or 2 * m + r < 1:
        raise ValidationError(f"need m, r >= 0 and 2m + r >= 1, got m={m}, r={r}")
    _check_workers(workers, chunk_size)
    n = 2 * m + r
    total = check_cost(q, n, max_cost)
    chosen = resolve_method(q, method, total)

    logger = CensusLogger(__name__)
    logger.start_operation(f"centralizer scan q={q} m={m} r={r} ({chosen.value})", total)
    found = _run_partitioned(_scan_centralizer, (q, m, r), (chosen, chunk_size), total, workers)
    logger.complete_operation(f"centralizer scan q={q} m={m} r={r}")
    return found.get(1, 0)


def involution_census(
    n: int,
    max_cost: int = DEFAULT_MAX_COST,
    method: Union[ScanMethod, str] = ScanMethod.AUTO,
    workers: int = 1,
    chunk_size: int = DEFAULT_CHUNK_SIZE
) -> int:
    """
    Count n x n matrices A over F_2 with A^2 = I.

    D -> I + D is a bijection from differentials, so the result equals c(2, n).

    Raises:
        TooLarge: 2^(n^2) > max_cost
    """
    if not isinstance(n, int) or n < 1:
        raise ValidationError(f"n must be a positive integer, got {n!r}")
    _check_workers(workers, chunk_size)
    total = check_cost(2, n, max_cost)
    chosen = resolve_method(2, method, total)

    logger = CensusLogger(__name__)
    logger.start_operation(f"involution scan n={n} ({chosen.value})", total)
    found = _run_partitioned(_scan_involutions, (n,), (chosen, chunk_size), total, workers)
    logger.complete_operation(f"involution scan n={n}")
    return found.get(1, 0)


def normal_form_census(q: int, n: int, max_cost: int = DEFAULT_MAX_COST) -> int:
    """
    Run the normal-form round trip on every differential on F_q^n.

    Returns:
        Number of differentials checked
    """
    report = enumerate_differentials(q, n, max_cost=max_cost, check_normal_forms=True)
    return report.differential_count


def verify_all(
    q: int,
    max_n: int,
    max_cost: int = DEFAULT_MAX_COST,
    method: Union[ScanMethod, str] = ScanMethod.AUTO,
    workers: int = 1,
    chunk_size: int = DEFAULT_CHUNK_SIZE,
    logger: Optional[CensusLogger] = None
) -> List[OracleReport]:
    """
    Oracle reports for n = 1 .. max_n with centralizer and involution checks.

    Each report for dimension n carries the centralizer scans of every
    (m, r) with 2m + r = n, and for q = 2 the involution count.

    Raises:
        TooLarge: the largest requested scan exceeds max_cost
    """
    if not isinstance(max_n, int) or max_n < 1:
        raise ValidationError(f"max-n must be a positive integer, got {max_n!r}")
    check_cost(q, max_n, max_cost)
    logger = logger or CensusLogger(__name__)
    reports = []
    for n in range(1, max_n + 1):
        report = enumerate_differentials(q, n, max_cost, method, workers, chunk_size)
        for r in range(n % 2, n + 1, 2):
            m = (n - r) // 2
            scanned = enumerate_centralizer(q, m, r, max_cost, method, workers, chunk_size)
            report.centralizers.append(CentralizerCheck(q, m, r, scanned, centralizer_order(q, m, r)))
        if q == 2:
            report.involution_count = involution_census(n, max_cost, method, workers, chunk_size)
        logger.info(f"n={n}: {'agrees' if report.agrees else 'DISAGREES'}")
        reports.append(report)
    return reports
