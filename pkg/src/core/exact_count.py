"""
Exact counting of differentials on F_q^n by homology dimension.

Every quantity is an int or a Fraction; nothing here touches floating
point. The counting formulas are polynomial identities in q, so the
raw formulas accept any integer q >= 2. Reports that describe an
actual field (count_report, limit_probs) require q to be a prime power.
"""

from fractions import Fraction
from functools import lru_cache
from typing import Dict, Optional, Union

from .exceptions import InvariantBreach, ParityMismatch, ValidationError
from .finite_field import ff_from_order
from ..models.reports import CountReport, LimitReport, Parity
from ..utils.logger import get_logger

logger = get_logger(__name__)

DEFAULT_R_CAP = 8


def as_parity(parity: Union[Parity, str]) -> Parity:
    """Coerce "even" / "odd" or a Parity member to Parity."""
    try:
        return Parity(parity)
    except (ValueError, TypeError) as e:
        choices = [p.value for p in Parity]
        raise ValidationError(f"parity must be one of {choices}, got {parity!r}") from e


def _check_q(q: int) -> None:
    """Reject q below 2 or of the wrong type."""
    if not isinstance(q, int) or q < 2:
        raise ValidationError(f"field order must be an integer >= 2, got {q!r}")


def _check_parity(n: int, r: int) -> None:
    """Require 0 <= r <= n with r and n of equal parity."""
    if r < 0 or r > n:
        raise ValidationError(f"homology dimension r={r} outside [0, {n}]")
    if (n - r) % 2:
        raise ParityMismatch(f"r={r} and n={n} must have the same parity")


def _q_product(q: int, start: int, stop: int) -> int:
    """prod_{j=start}^{stop} (q^j - 1)."""
    result = 1
    for j in range(start, stop + 1):
        result *= q ** j - 1
    return result


@lru_cache(maxsize=None)
def gl_order(q: int, k: int) -> int:
    """
    Order of GL_k(q): q^(k(k-1)/2) * prod_{j=1}^k (q^j - 1).

    Args:
        q: Field order
        k: Matrix size, k >= 0

    Returns:
        |GL_k(q)|; 1 for k = 0
    """
    _check_q(q)
    if k < 0:
        raise ValidationError(f"k must be non-negative, got {k}")
    return q ** (k * (k - 1) // 2) * _q_product(q, 1, k)


@lru_cache(maxsize=None)
def centralizer_order(q: int, m: int, r: int) -> int:
    """Order of the centralizer of canonical_Dr(m, r) in GL_{2m+r}(q)."""
    if m < 0 or r < 0:
        raise ValidationError(f"block counts must be non-negative, got m={m}, r={r}")
    return gl_order(q, m) * gl_order(q, r) * q ** (2 * m * r + m * m)


@lru_cache(maxsize=None)
def count_r(q: int, n: int, r: int) -> int:
    """
    Number of differentials on F_q^n with r-dimensional homology.

    Computed as |GL_n(q)| / |C_r|, the size of the conjugation orbit of
    canonical_Dr((n - r) / 2, r).

    Raises:
        ParityMismatch: r and n differ in parity
        InvariantBreach: the orbit division is not exact
    """
    _check_q(q)
    _check_parity(n, r)
    m = (n - r) // 2
    quotient, remainder = divmod(gl_order(q, n), centralizer_order(q, m, r))
    if remainder:
        raise InvariantBreach(f"|GL_{n}({q})| not divisible by |C_{r}| (m={m})")
    return quotient


def total_count(q: int, n: int) -> int:
    """c(q, n): number of differentials on F_q^n."""
    return sum(count_r(q, n, r) for r in range(n % 2, n + 1, 2))


def count_report(q: int, n: int) -> CountReport:
    """
    Full census of differentials on F_q^n.

    Args:
        q: Field order (prime power)
        n: Dimension, n >= 1

    Returns:
        CountReport with per-r counts, total and exact probabilities
    """
    ff_from_order(q)
    if not isinstance(n, int) or n < 1:
        raise ValidationError(f"n must be a positive integer, got {n!r}")
    counts = {r: count_r(q, n, r) for r in range(n % 2, n + 1, 2)}
    total = sum(counts.values())
    probs = {r: Fraction(c, total) for r, c in counts.items()}
    report = CountReport(q=q, n=n, counts=counts, total=total, probs=probs)
    if not report.is_consistent:
        raise InvariantBreach(f"inconsistent census for q={q}, n={n}")
    return report


def ratio_closed_form(q: int, n: int, r: int) -> Fraction:
    """
    Closed form of c_r(q, n) / c_base(q, n), base = n mod 2.

    With m = (n - r) / 2:
      even r = 2s: q^s / prod_{j=1}^r (q^j - 1) * prod_{j=1}^s (1 - q^-(m+j))
      odd r = 2s+1: (q - 1) q^s / prod_{j=1}^r (q^j - 1) * prod_{j=1}^s (1 - q^-(m+j))
    """
    _check_q(q)
    _check_parity(n, r)
    m = (n - r) // 2
    s = r // 2
    value = Fraction(q ** s, _q_product(q, 1, r))
    if r % 2:
        value *= q - 1
    for j in range(1, s + 1):
        value *= 1 - Fraction(1, q ** (m + j))
    return value


def ratio_finite(q: int, n: int, r: int) -> Fraction:
    """
    Exact ratio c_r(q, n) / c_base(q, n) with base 0 (even n) or 1 (odd n).

    The closed form and the count quotient are both evaluated and must
    agree.

    Raises:
        ParityMismatch: r and n differ in parity
        InvariantBreach: closed form and quotient disagree
    """
    _check_parity(n, r)
    base = n % 2
    quotient = Fraction(count_r(q, n, r), count_r(q, n, base))
    closed = ratio_closed_form(q, n, r)
    if quotient != closed:
        raise InvariantBreach(f"closed form {closed} != count quotient {quotient} at q={q}, n={n}, r={r}")
    return quotient


@lru_cache(maxsize=None)
def limit_ratio(q: int, r: int) -> Fraction:
    """
    p_r(q) / p_base(q) in the n -> infinity limit.

    Even r: q^(r/2) / prod_{j=1}^r (q^j - 1).
    Odd r: (q - 1) q^((r-1)/2) / prod_{j=1}^r (q^j - 1).
    The base dimensions r = 0 and r = 1 give 1.
    """
    _check_q(q)
    if r < 0:
        raise ValidationError(f"r must be non-negative, got {r}")
    if r in (0, 1):
        return Fraction(1)
    value = Fraction(q ** (r // 2), _q_product(q, 1, r))
    if r % 2:
        value *= q - 1
    return value


def limit_series_term(q: int, k: int, parity: Union[Parity, str]) -> Fraction:
    """
    k-th term (k >= 1) of S (even) or S' (odd).

    S = sum_k q^k / prod_{j=1}^{2k} (q^j - 1),
    S' = (q - 1) sum_k q^k / prod_{j=1}^{2k+1} (q^j - 1).
    """
    parity = as_parity(parity)
    if k < 1:
        raise ValidationError(f"series index starts at 1, got {k}")
    return limit_ratio(q, 2 * k if parity is Parity.EVEN else 2 * k + 1)


def _as_fraction(eps: Union[Fraction, float, int, str]) -> Fraction:
    """Exact value of eps; floats go through their shortest repr."""
    if isinstance(eps, float):
        return Fraction(str(eps))
    return Fraction(eps)


def limit_probs(
    q: int,
    parity: Union[Parity, str],
    eps: Union[Fraction, float, str] = Fraction(1, 10 ** 9),
    r_max: int = DEFAULT_R_CAP
) -> LimitReport:
    """
    Limit probabilities p_r(q) with certified absolute error <= eps.

    The series is truncated after term t_k once 2 t_{k+1} <= eps / 4.
    Consecutive terms shrink by at least a factor 2, so the omitted
    tail is at most 2 t_{k+1}. Since every limit_ratio is <= 1, each
    p_r inherits the base error bound.

    Args:
        q: Field order (prime power)
        parity: Parity, or "even" / "odd"
        eps: Absolute error, 0 < eps < 1
        r_max: Largest homology dimension to report

    Returns:
        LimitReport
    """
    ff_from_order(q)
    parity = as_parity(parity)
    try:
        eps_value = _as_fraction(eps)
    except (ValueError, TypeError) as e:
        raise ValidationError(f"eps is not a number: {eps!r}") from e
    if not 0 < eps_value < 1:
        raise ValidationError(f"eps must lie in (0, 1), got {eps}")
    base = 0 if parity is Parity.EVEN else 1
    if r_max < base:
        raise ValidationError(f"r_max must be at least {base} for {parity.value} parity")

    k = 1
    series = limit_series_term(q, 1, parity)
    next_term = limit_series_term(q, 2, parity)
    while 2 * next_term > eps_value / 4:
        k += 1
        series += next_term
        next_term = limit_series_term(q, k + 1, parity)
    tail_bound = 2 * next_term
    logger.debug(f"q={q} {parity.value}: truncated after k={k}, tail <= {float(tail_bound):.3e}")

    p_base = 1 / (1 + series)
    p_limit = {r: limit_ratio(q, r) * p_base for r in range(base, r_max + 1, 2)}
    return LimitReport(
        q=q,
        parity=parity,
        eps=eps_value,
        kmax=k,
        series_value=series,
        tail_bound=tail_bound,
        r_cap=r_max,
        p_limit=p_limit
    )


def asymptotic_deviation(q: int, n: int, r: int) -> Fraction:
    """
    q^(r^2/2) * p_r(q, n) / p_0(q, n), which tends to 1 as q grows.

    Args:
        q: Integer >= 2
        n: Even dimension
        r: Even homology dimension, 2 <= r <= n
    """
    _check_parity(n, r)
    if r % 2 or r < 2:
        raise ValidationError(f"r must be even and >= 2, got {r}")
    return q ** (r * r // 2) * ratio_finite(q, n, r)


def convergence_gap(
    q: int,
    n: int,
    r: int,
    eps: Union[Fraction, float, str] = Fraction(1, 10 ** 12),
    limit: Optional[LimitReport] = None
) -> Fraction:
    """
    Upper bound on |p_r(q, n) - p_r(q)|.

    Args:
        q: Field order
        n: Dimension
        r: Homology dimension with the parity of n
        eps: Accuracy of the limit approximation
        limit: Reuse an existing LimitReport covering r

    Returns:
        |p_r(q, n) - approximation| + eps
    """
    _check_parity(n, r)
    parity = Parity.EVEN if n % 2 == 0 else Parity.ODD
    if limit is None or limit.parity != parity or r not in limit.p_limit:
        limit = limit_probs(q, parity, eps, r_max=max(r, n % 2))
    finite = Fraction(count_r(q, n, r), total_count(q, n))
    return abs(finite - limit.p_limit[r]) + limit.eps


def probability_table(q: int, n: int) -> Dict[int, Fraction]:
    """r -> p_r(q, n) for one cell of a sweep."""
    return count_report(q, n).probs
