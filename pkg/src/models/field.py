"""
Finite field data model.
"""

from dataclasses import dataclass
from typing import Any, Dict, List, Tuple

from ..core.exceptions import NotPrime, ReducibleModulus


@dataclass(frozen=True)
class FieldElement:
    """
    Element of F_q in the polynomial basis 1, x, ..., x^(e-1).

    Attributes:
        coeffs: e coefficients in [0, p), lowest degree first
    """
    coeffs: Tuple[int, ...]

    @property
    def is_zero(self) -> bool:
        """Check whether this is the zero element."""
        return not any(self.coeffs)

    def to_list(self) -> List[int]:
        """Convert element to its JSON form."""
        return list(self.coeffs)

    def __str__(self) -> str:
        """Render as a polynomial in x."""
        terms = []
        for degree, coeff in enumerate(self.coeffs):
            if coeff == 0:
                continue
            if degree == 0:
                terms.append(str(coeff))
            else:
                power = "x" if degree == 1 else f"x^{degree}"
                terms.append(power if coeff == 1 else f"{coeff}{power}")
        return "+".join(reversed(terms)) or "0"


@dataclass(frozen=True)
class FieldSpec:
    """
    The finite field F_q with q = p^e.

    Elements are identified with integer codes sum(coeffs[i] * p^i);
    code 0 is zero, code 1 is one, and increasing code is the canonical
    element order.

    Attributes:
        p: prime characteristic
        e: extension degree
        modulus: e+1 coefficients (lowest first) of the monic irreducible
            defining polynomial; empty for prime fields
    """
    p: int
    e: int
    modulus: Tuple[int, ...] = ()

    def __post_init__(self):
        """Validate the characteristic, degree and modulus."""
        from ..core.finite_field import check_order, is_irreducible, is_prime

        check_order(self.p, self.e)
        if not is_prime(self.p):
            raise NotPrime(f"{self.p} is not prime")
        if self.e == 1:
            if self.modulus:
                raise ReducibleModulus(f"prime field GF({self.p}) takes no modulus, got {self.modulus}")
            return
        if len(self.modulus) != self.e + 1 or self.modulus[-1] != 1:
            raise ReducibleModulus(f"modulus {self.modulus} is not monic of degree {self.e}")
        if any(not isinstance(c, int) or not 0 <= c < self.p for c in self.modulus):
            raise ReducibleModulus(f"modulus {self.modulus} has coefficients outside [0, {self.p})")
        if not is_irreducible(self.modulus, self.p):
            raise ReducibleModulus(f"modulus {self.modulus} is reducible over F_{self.p}")

    @property
    def q(self) -> int:
        """Field order."""
        return self.p ** self.e

    @property
    def is_prime_field(self) -> bool:
        """Check whether the field is F_p."""
        return self.e == 1

    @property
    def zero(self) -> FieldElement:
        """Additive identity."""
        return FieldElement((0,) * self.e)

    @property
    def one(self) -> FieldElement:
        """Multiplicative identity."""
        return FieldElement((1,) + (0,) * (self.e - 1))

    def element(self, code: int) -> FieldElement:
        """
        Decode an integer code into a field element.

        Args:
            code: Integer in [0, q)

        Returns:
            Corresponding field element
        """
        if not 0 <= code < self.q:
            raise ValueError(f"Code {code} outside [0, {self.q})")
        coeffs = []
        for _ in range(self.e):
            code, digit = divmod(code, self.p)
            coeffs.append(digit)
        return FieldElement(tuple(coeffs))

    def code(self, element: FieldElement) -> int:
        """
        Encode a field element as its integer code.

        Args:
            element: Element valid under this spec

        Returns:
            Integer code in [0, q)
        """
        if len(element.coeffs) != self.e:
            raise ValueError(f"Element {element.coeffs} has wrong length for degree {self.e}")
        code = 0
        for coeff in reversed(element.coeffs):
            if not 0 <= coeff < self.p:
                raise ValueError(f"Coefficient {coeff} not reduced mod {self.p}")
            code = code * self.p + coeff
        return code

    def to_dict(self) -> Dict[str, Any]:
        """Convert field spec to its JSON form."""
        return {
            'p': self.p,
            'e': self.e,
            'modulus': list(self.modulus)
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'FieldSpec':
        """Create FieldSpec from its JSON form, validating the modulus."""
        return cls(p=int(data['p']), e=int(data['e']), modulus=tuple(int(c) for c in data.get('modulus', [])))

    def __str__(self) -> str:
        """String representation."""
        return f"GF({self.q})"
