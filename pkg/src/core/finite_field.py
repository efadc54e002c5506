"""
Arithmetic in F_q for q = p^e.

Prime fields use modular integers; extension fields use the polynomial
basis modulo the lexicographically smallest monic irreducible polynomial
of degree e. Internally elements are handled as integer codes (see
FieldSpec); the ff_* functions are the FieldElement-level front end.
"""

from functools import lru_cache
from itertools import product
from typing import List, Sequence, Tuple

from .exceptions import DegreeOutOfRange, DivisionByZero, InvariantBreach, NotPrime, NotPrimePower
from ..models.field import FieldElement, FieldSpec

MAX_DEGREE = 8
MAX_ORDER = 2 ** 20

# Extension fields up to this order get full operation tables.
TABLE_LIMIT = 256


def is_prime(n: int) -> bool:
    """Trial-division primality test."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _poly_trim(a: List[int]) -> List[int]:
    """Drop trailing zero coefficients in place."""
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: Sequence[int], b: Sequence[int], p: int) -> List[int]:
    """Remainder of a modulo b over F_p (coefficients lowest first)."""
    rem = _poly_trim(list(a))
    b = _poly_trim(list(b))
    lead_inv = _int_inverse(b[-1], p)
    while len(rem) >= len(b):
        factor = (rem[-1] * lead_inv) % p
        shift = len(rem) - len(b)
        for i, coeff in enumerate(b):
            rem[shift + i] = (rem[shift + i] - factor * coeff) % p
        _poly_trim(rem)
    return rem


def _poly_mul(a: Sequence[int], b: Sequence[int], p: int) -> List[int]:
    """Product of two polynomials over F_p."""
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    return _poly_trim(out)


def _poly_sub(a: Sequence[int], b: Sequence[int], p: int) -> List[int]:
    """Difference of two polynomials over F_p."""
    size = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(size)]
    return _poly_trim(out)


def _poly_divmod(a: Sequence[int], b: Sequence[int], p: int) -> Tuple[List[int], List[int]]:
    """Quotient and remainder of a by b over F_p."""
    rem = _poly_trim(list(a))
    b = _poly_trim(list(b))
    lead_inv = _int_inverse(b[-1], p)
    quot = [0] * max(len(rem) - len(b) + 1, 0)
    while len(rem) >= len(b):
        factor = (rem[-1] * lead_inv) % p
        shift = len(rem) - len(b)
        quot[shift] = factor
        for i, coeff in enumerate(b):
            rem[shift + i] = (rem[shift + i] - factor * coeff) % p
        _poly_trim(rem)
    return _poly_trim(quot), rem


def _int_inverse(a: int, p: int) -> int:
    """Inverse of a modulo prime p by the extended Euclidean algorithm."""
    old_r, r = a % p, p
    old_s, s = 1, 0
    while r:
        quotient = old_r // r
        old_r, r = r, old_r - quotient * r
        old_s, s = s, old_s - quotient * s
    if old_r != 1:
        raise DivisionByZero(f"{a} has no inverse modulo {p}")
    return old_s % p


def _poly_inverse(a: Sequence[int], modulus: Sequence[int], p: int) -> List[int]:
    """Inverse of a modulo the irreducible modulus, extended Euclid over F_p[x]."""
    old_r, r = _poly_trim(list(modulus)), _poly_trim(list(a))
    old_s, s = [], [1]
    if not r:
        raise DivisionByZero("zero has no inverse")
    while r:
        quotient, remainder = _poly_divmod(old_r, r, p)
        old_r, r = r, remainder
        old_s, s = s, _poly_sub(old_s, _poly_mul(quotient, s, p), p)
    # old_r is a nonzero constant since the modulus is irreducible
    scale = _int_inverse(old_r[0], p)
    return [(c * scale) % p for c in old_s]


def is_irreducible(poly: Sequence[int], p: int) -> bool:
    """
    Check irreducibility over F_p by exhaustive search for factors.

    Args:
        poly: Monic polynomial, coefficients lowest first
        p: Prime characteristic

    Returns:
        True if no monic factor of degree <= deg/2 divides poly
    """
    degree = len(poly) - 1
    for d in range(1, degree // 2 + 1):
        for low in product(range(p), repeat=d):
            factor = list(low) + [1]
            if not _poly_mod(poly, factor, p):
                return False
    return True


def check_order(p: int, e: int) -> None:
    """
    Enforce the degree and order caps.

    Raises:
        DegreeOutOfRange: e outside [1, MAX_DEGREE] or p^e > MAX_ORDER
    """
    if not 1 <= e <= MAX_DEGREE:
        raise DegreeOutOfRange(f"extension degree {e} outside [1, {MAX_DEGREE}]")
    if p ** e > MAX_ORDER:
        raise DegreeOutOfRange(f"field order {p}^{e} exceeds {MAX_ORDER}")


@lru_cache(maxsize=None)
def ff_make(p: int, e: int) -> FieldSpec:
    """
    Construct F_q, q = p^e, with the lexicographically smallest modulus.

    Args:
        p: Prime characteristic
        e: Extension degree, 1 <= e <= 8

    Returns:
        Field specification

    Raises:
        NotPrime: p is not prime
        DegreeOutOfRange: e or q outside the supported range
    """
    check_order(p, e)
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if e == 1:
        return FieldSpec(p=p, e=1, modulus=())

    # low-degree coefficients compared first
    for low in product(range(p), repeat=e):
        candidate = tuple(low) + (1,)
        if is_irreducible(candidate, p):
            return FieldSpec(p=p, e=e, modulus=candidate)
    raise InvariantBreach(f"no irreducible polynomial of degree {e} over F_{p}")


@lru_cache(maxsize=None)
def ff_from_order(q: int) -> FieldSpec:
    """
    Construct the field of order q.

    Raises:
        NotPrimePower: q is not a prime power
    """
    if q < 2:
        raise NotPrimePower(f"{q} is not a prime power")
    if q > MAX_ORDER:
        raise DegreeOutOfRange(f"field order {q} exceeds {MAX_ORDER}")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    e, rest = 0, q
    while rest % p == 0:
        rest //= p
        e += 1
    if rest != 1:
        raise NotPrimePower(f"{q} is not a prime power")
    return ff_make(p, e)


class FieldArithmetic:
    """
    Arithmetic on integer element codes of one field.

    Obtain instances through arithmetic(spec), which caches one per field.
    """

    def __init__(self, spec: FieldSpec):
        """
        Initialize arithmetic for a field.

        Args:
            spec: Field specification
        """
        self.spec = spec
        self.p = spec.p
        self.q = spec.q
        self._tables = None
        if not spec.is_prime_field and self.q <= TABLE_LIMIT:
            self._tables = self._build_tables()

    def _coeffs(self, code: int) -> List[int]:
        """Coefficient list of an element code."""
        coeffs = []
        for _ in range(self.spec.e):
            code, digit = divmod(code, self.p)
            coeffs.append(digit)
        return coeffs

    def _code(self, coeffs: Sequence[int]) -> int:
        """Element code of a coefficient list."""
        code = 0
        for coeff in reversed(list(coeffs)):
            code = code * self.p + coeff
        return code

    def _poly_add(self, a: int, b: int) -> int:
        """Sum of two element codes."""
        ca, cb = self._coeffs(a), self._coeffs(b)
        return self._code([(x + y) % self.p for x, y in zip(ca, cb)])

    def _poly_neg(self, a: int) -> int:
        """Additive inverse of an element code."""
        return self._code([(-x) % self.p for x in self._coeffs(a)])

    def _poly_mulmod(self, a: int, b: int) -> int:
        """Product of two element codes modulo the field modulus."""
        product_poly = _poly_mul(_poly_trim(self._coeffs(a)), _poly_trim(self._coeffs(b)), self.p)
        rem = _poly_mod(product_poly, self.spec.modulus, self.p) if product_poly else []
        return self._code(rem + [0] * (self.spec.e - len(rem)))

    def _poly_inv(self, a: int) -> int:
        """Multiplicative inverse of a nonzero element code."""
        inv = _poly_inverse(self._coeffs(a), self.spec.modulus, self.p)
        return self._code(inv + [0] * (self.spec.e - len(inv)))

    def _build_tables(self) -> Tuple[List[List[int]], List[List[int]], List[int], List[int]]:
        """Fill the addition, multiplication and inverse tables."""
        codes = range(self.q)
        add = [[self._poly_add(a, b) for b in codes] for a in codes]
        mul = [[self._poly_mulmod(a, b) for b in codes] for a in codes]
        neg = [self._poly_neg(a) for a in codes]
        inv = [0] + [self._poly_inv(a) for a in range(1, self.q)]
        return add, mul, neg, inv

    def add(self, a: int, b: int) -> int:
        """Sum of two codes."""
        if self._tables is not None:
            return self._tables[0][a][b]
        if self.spec.is_prime_field:
            return (a + b) % self.p
        return self._poly_add(a, b)

    def neg(self, a: int) -> int:
        """Additive inverse."""
        if self._tables is not None:
            return self._tables[2][a]
        if self.spec.is_prime_field:
            return (-a) % self.p
        return self._poly_neg(a)

    def sub(self, a: int, b: int) -> int:
        """Difference of two codes."""
        if self.spec.is_prime_field:
            return (a - b) % self.p
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        """Product of two codes."""
        if self._tables is not None:
            return self._tables[1][a][b]
        if self.spec.is_prime_field:
            return (a * b) % self.p
        return self._poly_mulmod(a, b)

    def inv(self, a: int) -> int:
        """
        Multiplicative inverse.

        Raises:
            DivisionByZero: a is zero
        """
        if a == 0:
            raise DivisionByZero(f"zero has no inverse in {self.spec}")
        if self._tables is not None:
            return self._tables[3][a]
        if self.spec.is_prime_field:
            return _int_inverse(a, self.p)
        return self._poly_inv(a)

    def pow(self, a: int, k: int) -> int:
        """Power a^k for k >= 0 by square-and-multiply."""
        result, base = 1, a
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    def axpy(self, x: Sequence[int], factor: int, y: Sequence[int]) -> List[int]:
        """Row operation x - factor * y."""
        if self.spec.is_prime_field:
            p = self.p
            return [(a - factor * b) % p for a, b in zip(x, y)]
        sub, mul = self.sub, self.mul
        return [sub(a, mul(factor, b)) for a, b in zip(x, y)]

    def scale(self, x: Sequence[int], factor: int) -> List[int]:
        """Row scaling factor * x."""
        if self.spec.is_prime_field:
            p = self.p
            return [(factor * a) % p for a in x]
        mul = self.mul
        return [mul(factor, a) for a in x]

    def dot(self, x: Sequence[int], y: Sequence[int]) -> int:
        """Inner product of two code vectors."""
        if self.spec.is_prime_field:
            return sum(a * b for a, b in zip(x, y)) % self.p
        total = 0
        for a, b in zip(x, y):
            if a and b:
                total = self.add(total, self.mul(a, b))
        return total


@lru_cache(maxsize=None)
def arithmetic(spec: FieldSpec) -> FieldArithmetic:
    """Cached arithmetic for a field."""
    return FieldArithmetic(spec)


def ff_add(a: FieldElement, b: FieldElement, spec: FieldSpec) -> FieldElement:
    """Field addition."""
    return spec.element(arithmetic(spec).add(spec.code(a), spec.code(b)))


def ff_sub(a: FieldElement, b: FieldElement, spec: FieldSpec) -> FieldElement:
    """Field subtraction."""
    return spec.element(arithmetic(spec).sub(spec.code(a), spec.code(b)))


def ff_mul(a: FieldElement, b: FieldElement, spec: FieldSpec) -> FieldElement:
    """Field multiplication, reduced modulo the defining polynomial."""
    return spec.element(arithmetic(spec).mul(spec.code(a), spec.code(b)))


def ff_neg(a: FieldElement, spec: FieldSpec) -> FieldElement:
    """Additive inverse."""
    return spec.element(arithmetic(spec).neg(spec.code(a)))


def ff_inv(a: FieldElement, spec: FieldSpec) -> FieldElement:
    """
    Multiplicative inverse by the extended Euclidean algorithm.

    Raises:
        DivisionByZero: a is zero
    """
    code = spec.code(a)
    if code == 0:
        raise DivisionByZero(f"zero has no inverse in {spec}")
    if spec.is_prime_field:
        return spec.element(_int_inverse(code, spec.p))
    inv = _poly_inverse(list(a.coeffs), spec.modulus, spec.p)
    return FieldElement(tuple(inv + [0] * (spec.e - len(inv))))


def ff_pow(a: FieldElement, k: int, spec: FieldSpec) -> FieldElement:
    """Power a^k for k >= 0."""
    return spec.element(arithmetic(spec).pow(spec.code(a), k))


def ff_enumerate(spec: FieldSpec) -> List[FieldElement]:
    """All q elements in canonical order (0, 1, ...)."""
    return [spec.element(code) for code in range(spec.q)]
