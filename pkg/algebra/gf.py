"""Exact arithmetic in F_p and F_{p^k}.

Elements of F_{p^k} are stored fully reduced as k coefficients (of 1, a, ..., a^{k-1})
modulo a monic irreducible modulus, so equality is structural. The default modulus
is the lexicographically smallest irreducible polynomial of degree k, which keeps
every table in the repository reproducible without external Conway tables.
"""

import itertools
import math
import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Union

from utils.common import (
    FIELD_ENUMERATION_LIMIT,
    InvalidSpec,
    ParseError,
    SpecMismatch,
    ZeroInversion,
    check_limit,
)
from utils.text_format import format_monomial, join_terms, parse_rational_polynomial

logger = logging.getLogger(__name__)

FIELD_SYMBOL = "a"
"""Symbol of the generator of F_{p^k} over F_p in text forms."""

IntPoly = tuple[int, ...]
"""Polynomial over F_p as coefficients, lowest degree first."""


def is_prime(p: int) -> bool:
    """Deterministic trial division; parameters are desk scale."""
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def _trim(coeffs: list[int]) -> list[int]:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def _zp_sub(a: list[int], b: list[int], p: int) -> list[int]:
    out = [0] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] = c
    for i, c in enumerate(b):
        out[i] = (out[i] - c) % p
    return _trim(out)


def _zp_mul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _zp_divmod(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int]]:
    """Long division over F_p; b must be nonzero."""
    rem = list(a)
    lead_inv = pow(b[-1], p - 2, p)
    quot = [0] * max(len(a) - len(b) + 1, 0)
    for shift in range(len(a) - len(b), -1, -1):
        c = rem[shift + len(b) - 1] * lead_inv % p
        if c:
            quot[shift] = c
            for j, y in enumerate(b):
                rem[shift + j] = (rem[shift + j] - c * y) % p
    return _trim(quot), _trim(rem[: len(b) - 1])


def _zp_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    """Monic gcd over F_p."""
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _zp_divmod(a, b, p)[1]
    if not a:
        return a
    lead_inv = pow(a[-1], p - 2, p)
    return [c * lead_inv % p for c in a]


def _zp_ext_gcd(
    a: list[int], b: list[int], p: int
) -> tuple[list[int], list[int], list[int]]:
    """Return (d, s, t) with s*a + t*b = d over F_p, d not normalized."""
    r0, r1 = _trim(list(a)), _trim(list(b))
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = _zp_divmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, _zp_sub(s0, _zp_mul(q, s1, p), p)
        t0, t1 = t1, _zp_sub(t0, _zp_mul(q, t1, p), p)
    return r0, s0, t0


def is_irreducible_mod_p(poly: IntPoly, p: int) -> bool:
    """Check that a monic polynomial over F_p has no factor of degree <= deg/2.

    Uses gcd(f, x^{p^d} - x) = 1 for d = 1 .. deg/2; d = 1 is the root test.
    """
    f = _trim(list(poly))
    degree = len(f) - 1
    if degree < 1:
        return False
    if degree == 1:
        return True
    x = [0, 1]
    power = list(x)
    for _ in range(degree // 2):
        # power <- power^p mod f, i.e. x^{p^d} mod f
        result = [1]
        base = power
        exponent = p
        while exponent:
            if exponent & 1:
                result = _zp_divmod(_zp_mul(result, base, p), f, p)[1]
            base = _zp_divmod(_zp_mul(base, base, p), f, p)[1]
            exponent >>= 1
        power = result
        if len(_zp_gcd(f, _zp_sub(power, x, p), p)) > 1:
            return False
    return True


def find_irreducible(p: int, k: int) -> IntPoly:
    """Return the lexicographically smallest monic irreducible polynomial of degree k.

    Candidates are ordered by their coefficient tuples (a_0, ..., a_{k-1}) ascending.
    For k = 1 this is the placeholder `x`.
    """
    if not is_prime(p):
        raise InvalidSpec(f"{p} is not prime")
    if k < 1:
        raise InvalidSpec(f"Extension degree must be at least 1, got {k}")
    for tail in itertools.product(range(p), repeat=k):
        candidate = tail + (1,)
        if is_irreducible_mod_p(candidate, p):
            return candidate
    raise AssertionError(f"No irreducible polynomial of degree {k} over F_{p}")


def mul_reduce(x: IntPoly, y: IntPoly, spec: "FieldSpec") -> IntPoly:
    """Coefficient product of two elements reduced modulo the field modulus.

    This is the general path; FieldElement uses plain integers when k = 1 and the
    two paths must agree bit for bit.
    """
    p, k = spec.p, spec.k
    prod = [0] * (2 * k - 1)
    for i, a in enumerate(x):
        if a:
            for j, b in enumerate(y):
                prod[i + j] += a * b
    modulus = spec.modulus
    for top in range(2 * k - 2, k - 1, -1):
        c = prod[top] % p
        if c:
            for j in range(k + 1):
                prod[top - k + j] -= c * modulus[j]
    return tuple(c % p for c in prod[:k])


def inverse_euclid(x: IntPoly, spec: "FieldSpec") -> IntPoly:
    """Inverse of a nonzero element by extended Euclid against the modulus."""
    p = spec.p
    d, s, _ = _zp_ext_gcd(list(x), list(spec.modulus), p)
    # d is a nonzero constant since the modulus is irreducible
    d_inv = pow(d[0], p - 2, p)
    padded = [c * d_inv % p for c in s] + [0] * spec.k
    return tuple(padded[: spec.k])


def format_int_poly(poly: IntPoly, variable: str = "x") -> str:
    pieces = [
        format_monomial(str(c), variable, i)
        for i, c in reversed(list(enumerate(poly)))
        if c
    ]
    return join_terms(pieces)


@dataclass(frozen=True)
class FieldSpec:
    """Presentation of F_{p^k} as F_p[a]/(modulus).

    Attributes:
        p: The characteristic, a prime.
        k: Extension degree.
        modulus: Monic irreducible polynomial of degree k over F_p, lowest degree first.
    """

    p: int
    k: int
    modulus: IntPoly

    def __post_init__(self):
        if not is_prime(self.p):
            raise InvalidSpec(f"{self.p} is not prime")
        if self.k < 1:
            raise InvalidSpec(f"Extension degree must be at least 1, got {self.k}")
        if len(self.modulus) != self.k + 1 or self.modulus[-1] != 1:
            raise InvalidSpec(
                f"Modulus {format_int_poly(self.modulus)} is not monic of degree {self.k}"
            )
        if any(not 0 <= c < self.p for c in self.modulus):
            raise InvalidSpec(f"Modulus coefficients must lie in [0, {self.p})")
        if self.k == 1 and self.modulus != (0, 1):
            raise InvalidSpec(
                f"Prime fields use the modulus x, got {format_int_poly(self.modulus)}"
            )
        if self.k > 1 and not is_irreducible_mod_p(self.modulus, self.p):
            raise InvalidSpec(
                f"Modulus {format_int_poly(self.modulus)} is reducible over F_{self.p}"
            )

    @classmethod
    def create(cls, p: int, k: int = 1, modulus: Optional[IntPoly] = None) -> "FieldSpec":
        """Build F_{p^k}, choosing the default modulus when none is given."""
        if modulus is None:
            modulus = find_irreducible(p, k)
        return cls(p=p, k=k, modulus=tuple(modulus))

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        """Parse `GF(q)` or `GF(q; modulus)`, e.g. `GF(9; x^2+1)`."""
        match = re.fullmatch(r"\s*GF\(\s*(\d+)\s*(?:;\s*([^)]*?)\s*)?\)\s*", text)
        if not match:
            raise ParseError(f"Invalid field text {text!r}; expected GF(q) or GF(q; modulus)")
        p, k = prime_power(int(match.group(1)))
        modulus = None
        if match.group(2):
            terms = parse_rational_polynomial(match.group(2), ["x"])
            coeffs = [0] * (max((m[0] for m in terms), default=0) + 1)
            for (exponent,), c in terms.items():
                if c.denominator != 1:
                    raise ParseError(f"Modulus coefficients must be integers: {text!r}")
                coeffs[exponent] = c.numerator % p
            modulus = tuple(_trim(coeffs))
        return cls.create(p, k, modulus)

    @property
    def order(self) -> int:
        return self.p**self.k

    @property
    def has_default_modulus(self) -> bool:
        return self.k == 1 or self.modulus == find_irreducible(self.p, self.k)

    def element(self, coeffs: Union[int, IntPoly, list[int]]) -> "FieldElement":
        """Build an element from an integer (embedded from F_p) or a coefficient list."""
        if isinstance(coeffs, int):
            coeffs = [coeffs]
        if len(coeffs) > self.k:
            raise SpecMismatch(f"Too many coefficients for {self}: {list(coeffs)}")
        padded = [c % self.p for c in coeffs] + [0] * (self.k - len(coeffs))
        return FieldElement(self, tuple(padded))

    def from_fraction(self, value: Fraction) -> "FieldElement":
        """Image of a rational number whose denominator is prime to p."""
        if value.denominator % self.p == 0:
            raise ZeroInversion(f"{value} has no image in {self}: denominator divisible by {self.p}")
        return self.element(value.numerator * pow(value.denominator, self.p - 2, self.p))

    @property
    def zero(self) -> "FieldElement":
        return self.element(0)

    @property
    def one(self) -> "FieldElement":
        return self.element(1)

    @property
    def generator(self) -> "FieldElement":
        """The class of `a`; for k = 1 this is just the element 0 of the placeholder modulus x."""
        if self.k == 1:
            return self.element(-self.modulus[0])
        return self.element([0, 1])

    def parse_element(self, text: str) -> "FieldElement":
        """Parse an element in the `2*a+1` syntax (bare integers when k = 1)."""
        terms = parse_rational_polynomial(text, [FIELD_SYMBOL])
        result = self.zero
        for (exponent,), c in terms.items():
            result = result + self.from_fraction(c) * self.generator**exponent
        return result

    def __str__(self):
        if self.k == 1:
            return f"GF({self.order})"
        return f"GF({self.order}; {format_int_poly(self.modulus)})"


def prime_power(q: int) -> tuple[int, int]:
    """Split q = p^k, raising InvalidSpec if q is not a prime power."""
    if q < 2:
        raise InvalidSpec(f"{q} is not a prime power")
    p = next((d for d in range(2, math.isqrt(q) + 1) if q % d == 0), q)
    k = 0
    rest = q
    while rest % p == 0:
        rest //= p
        k += 1
    if rest != 1:
        raise InvalidSpec(f"{q} is not a prime power")
    return p, k


Scalar = Union["FieldElement", int]


@dataclass(frozen=True)
class FieldElement:
    """Element of F_{p^k}: k coefficients in [0, p) of 1, a, ..., a^{k-1}."""

    spec: FieldSpec
    coeffs: IntPoly

    def _coerce(self, other: Scalar) -> "FieldElement":
        if isinstance(other, int):
            return self.spec.element(other)
        if other.spec is not self.spec and other.spec != self.spec:
            raise SpecMismatch(f"Cannot combine elements of {self.spec} and {other.spec}")
        return other

    def __add__(self, other: Scalar) -> "FieldElement":
        other = self._coerce(other)
        p = self.spec.p
        return FieldElement(
            self.spec, tuple((x + y) % p for x, y in zip(self.coeffs, other.coeffs))
        )

    __radd__ = __add__

    def __neg__(self) -> "FieldElement":
        p = self.spec.p
        return FieldElement(self.spec, tuple(-x % p for x in self.coeffs))

    def __sub__(self, other: Scalar) -> "FieldElement":
        return self + (-self._coerce(other))

    def __rsub__(self, other: Scalar) -> "FieldElement":
        return self._coerce(other) - self

    def __mul__(self, other: Scalar) -> "FieldElement":
        other = self._coerce(other)
        spec = self.spec
        if spec.k == 1:
            return FieldElement(spec, (self.coeffs[0] * other.coeffs[0] % spec.p,))
        return FieldElement(spec, mul_reduce(self.coeffs, other.coeffs, spec))

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        """Multiplicative inverse by the extended Euclidean algorithm."""
        if self.is_zero:
            raise ZeroInversion(f"Cannot invert zero in {self.spec}")
        p = self.spec.p
        if self.spec.k == 1:
            return self.spec.element(pow(self.coeffs[0], p - 2, p))
        return self.spec.element(list(inverse_euclid(self.coeffs, self.spec)))

    def __truediv__(self, other: Scalar) -> "FieldElement":
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other: Scalar) -> "FieldElement":
        return self._coerce(other) * self.inverse()

    def __pow__(self, exponent: int) -> "FieldElement":
        base = self if exponent >= 0 else self.inverse()
        exponent = abs(exponent)
        result = self.spec.one
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    @property
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self):
        return not self.is_zero

    @property
    def sort_key(self) -> IntPoly:
        return self.coeffs

    def __str__(self):
        if self.spec.k == 1:
            return str(self.coeffs[0])
        return format_int_poly(self.coeffs, FIELD_SYMBOL)

    def __repr__(self):
        return f"FieldElement({self}, {self.spec})"


def enumerate_field(spec: FieldSpec, limit: Optional[int] = None) -> list[FieldElement]:
    """All p^k elements in lexicographic coefficient order."""
    check_limit(
        spec.order,
        f"the elements of {spec}",
        limit if limit is not None else FIELD_ENUMERATION_LIMIT,
    )
    return list(iter_field(spec))


def iter_field(spec: FieldSpec) -> Iterator[FieldElement]:
    for coeffs in itertools.product(range(spec.p), repeat=spec.k):
        yield FieldElement(spec, coeffs)
