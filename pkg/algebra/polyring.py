"""Polynomials over F_{p^k}, factorization of x^n - 1 and the quotient F_{p^k}[x]/(x^n - 1)."""

import logging
from collections import Counter
from dataclasses import dataclass
from functools import reduce
from operator import mul
from typing import Iterator, Optional, Sequence, Union

import numpy

from algebra.gf import FIELD_SYMBOL, FieldElement, FieldSpec, iter_field
from utils.common import (
    BothZero,
    DivisionByZeroPoly,
    InvalidSpec,
    MixedParameters,
    NotCoprime,
    ParseError,
    SpecMismatch,
    ZeroPolynomial,
    check_limit,
    self_checks_enabled,
)
from utils.text_format import format_monomial, join_terms, parse_rational_polynomial

logger = logging.getLogger(__name__)

POLY_SYMBOL = "x"


class _ZeroDegree:
    """Degree of the zero polynomial: below every integer, refuses arithmetic."""

    def __lt__(self, other):
        return isinstance(other, int) or other is not self

    def __le__(self, other):
        return True

    def __gt__(self, other):
        return False

    def __ge__(self, other):
        return other is self

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("-inf")

    def __repr__(self):
        return "-inf"


DEG_ZERO = _ZeroDegree()

Coefficient = Union[FieldElement, int]


@dataclass(frozen=True)
class Poly:
    """Dense polynomial over F_{p^k}, lowest degree first, no trailing zeros."""

    spec: FieldSpec
    coeffs: tuple[FieldElement, ...]

    def __post_init__(self):
        coeffs = [
            self.spec.element(c) if isinstance(c, int) else c for c in self.coeffs
        ]
        for c in coeffs:
            if c.spec != self.spec:
                raise SpecMismatch(f"Coefficient {c!r} is not in {self.spec}")
        while coeffs and coeffs[-1].is_zero:
            coeffs.pop()
        object.__setattr__(self, "coeffs", tuple(coeffs))

    @classmethod
    def of(cls, spec: FieldSpec, coeffs: Sequence[Coefficient]) -> "Poly":
        return cls(spec, tuple(coeffs))  # pyright: ignore[reportArgumentType]

    @classmethod
    def zero(cls, spec: FieldSpec) -> "Poly":
        return cls(spec, ())

    @classmethod
    def one(cls, spec: FieldSpec) -> "Poly":
        return cls.of(spec, [1])

    @classmethod
    def monomial(cls, spec: FieldSpec, degree: int, coeff: Coefficient = 1) -> "Poly":
        return cls.of(spec, [0] * degree + [coeff])

    @classmethod
    def x_n_minus_1(cls, spec: FieldSpec, n: int) -> "Poly":
        return cls.of(spec, [-1] + [0] * (n - 1) + [1])

    @classmethod
    def parse(cls, spec: FieldSpec, text: str, max_degree: Optional[int] = None) -> "Poly":
        """Parse `c_d*x^d + ... + c_0`; coefficients use the field syntax in `a`.

        Raises:
            ParseError: If the text is malformed or a term has degree above `max_degree`.
        """
        terms = parse_rational_polynomial(text, [POLY_SYMBOL, FIELD_SYMBOL])
        degree = max((m[0] for m in terms), default=-1)
        if max_degree is not None and degree > max_degree:
            raise ParseError(f"Degree of {text!r} exceeds {max_degree}")
        coeffs = [spec.zero] * (degree + 1)
        for (x_exp, a_exp), c in terms.items():
            coeffs[x_exp] = coeffs[x_exp] + spec.from_fraction(c) * spec.generator**a_exp
        return cls.of(spec, coeffs)

    @property
    def degree(self) -> Union[int, _ZeroDegree]:
        return len(self.coeffs) - 1 if self.coeffs else DEG_ZERO

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self) -> FieldElement:
        if self.is_zero:
            raise ZeroPolynomial("The zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    @property
    def is_monic(self) -> bool:
        return not self.is_zero and self.lead == self.spec.one

    def coefficient(self, i: int) -> FieldElement:
        return self.coeffs[i] if i < len(self.coeffs) else self.spec.zero

    def monic(self) -> "Poly":
        if self.is_zero:
            raise ZeroPolynomial("Cannot normalize the zero polynomial")
        return self.scale(self.lead.inverse())

    def scale(self, c: Coefficient) -> "Poly":
        return Poly.of(self.spec, [x * c for x in self.coeffs])

    def _check(self, other: "Poly") -> None:
        if other.spec != self.spec:
            raise SpecMismatch(f"Polynomials over {self.spec} and {other.spec}")

    def __add__(self, other: "Poly") -> "Poly":
        self._check(other)
        size = max(len(self.coeffs), len(other.coeffs))
        return Poly.of(
            self.spec, [self.coefficient(i) + other.coefficient(i) for i in range(size)]
        )

    def __neg__(self) -> "Poly":
        return Poly.of(self.spec, [-c for c in self.coeffs])

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: Union["Poly", Coefficient]) -> "Poly":
        if not isinstance(other, Poly):
            return self.scale(other)
        self._check(other)
        if self.is_zero or other.is_zero:
            return Poly.zero(self.spec)
        out = [self.spec.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    out[i + j] = out[i + j] + x * y
        return Poly.of(self.spec, out)

    __rmul__ = __mul__

    def __divmod__(self, other: "Poly") -> tuple["Poly", "Poly"]:
        self._check(other)
        if other.is_zero:
            raise DivisionByZeroPoly(f"Division of {self} by the zero polynomial")
        rem = list(self.coeffs)
        m = len(other.coeffs)
        lead_inv = other.lead.inverse()
        quot = [self.spec.zero] * max(len(rem) - m + 1, 0)
        for shift in range(len(rem) - m, -1, -1):
            c = rem[shift + m - 1] * lead_inv
            if c:
                quot[shift] = c
                for j, y in enumerate(other.coeffs):
                    rem[shift + j] = rem[shift + j] - c * y
        return Poly.of(self.spec, quot), Poly.of(self.spec, rem[: m - 1])

    def __floordiv__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    def divides(self, other: "Poly") -> bool:
        return (other % self).is_zero

    def __call__(self, point: FieldElement) -> FieldElement:
        result = self.spec.zero
        for c in reversed(self.coeffs):
            result = result * point + c
        return result

    @property
    def sort_key(self) -> tuple:
        """Degree first, then coefficient tuples lowest degree first."""
        return (len(self.coeffs), tuple(c.sort_key for c in self.coeffs))

    def __str__(self):
        pieces = [
            format_monomial(str(c), POLY_SYMBOL, i)
            for i, c in reversed(list(enumerate(self.coeffs)))
            if c
        ]
        return join_terms(pieces)

    def __repr__(self):
        return f"Poly({self}, {self.spec})"


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd by Euclid."""
    if a.is_zero and b.is_zero:
        raise BothZero("gcd(0, 0) is undefined")
    while not b.is_zero:
        a, b = b, a % b
    return a.monic()


def poly_lcm(a: Poly, b: Poly) -> Poly:
    if a.is_zero or b.is_zero:
        raise BothZero("lcm needs two nonzero polynomials")
    return ((a * b) // poly_gcd(a, b)).monic()


def gcd_many(polys: Sequence[Poly]) -> Poly:
    return reduce(poly_gcd, polys)


def lcm_many(polys: Sequence[Poly]) -> Poly:
    return reduce(poly_lcm, polys)


def poly_ext_gcd(a: Poly, b: Poly) -> tuple[Poly, Poly, Poly]:
    """Return (d, s, t) with s*a + t*b = d and d = gcd(a, b) monic."""
    if a.is_zero and b.is_zero:
        raise BothZero("gcd(0, 0) is undefined")
    spec = a.spec
    r0, r1 = a, b
    s0, s1 = Poly.one(spec), Poly.zero(spec)
    t0, t1 = Poly.zero(spec), Poly.one(spec)
    while not r1.is_zero:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    lead_inv = r0.lead.inverse()
    d, s, t = r0.scale(lead_inv), s0.scale(lead_inv), t0.scale(lead_inv)
    if self_checks_enabled():
        assert (s * a + t * b - d).is_zero, f"Bezout identity fails for {a}, {b}"
    return d, s, t


def poly_pow_mod(base: Poly, exponent: int, modulus: Poly) -> Poly:
    result = Poly.one(base.spec) % modulus
    base = base % modulus
    while exponent:
        if exponent & 1:
            result = (result * base) % modulus
        base = (base * base) % modulus
        exponent >>= 1
    return result


def is_irreducible(f: Poly) -> bool:
    """No factor of degree <= deg/2, via gcd(f, x^{q^d} - x) for d = 1 .. deg/2."""
    if f.is_zero or f.degree < 1:
        return False
    x = Poly.monomial(f.spec, 1)
    power = x
    for _ in range(f.degree // 2):  # pyright: ignore[reportOperatorIssue]
        power = poly_pow_mod(power, f.spec.order, f)
        if poly_gcd(f, power - x).degree > 0:  # pyright: ignore[reportOperatorIssue]
            return False
    return True


def cyclotomic_cosets(n: int, q: int) -> list[list[int]]:
    """The q-cyclotomic cosets modulo n, each sorted, ordered by smallest element."""
    if n < 1:
        raise InvalidSpec(f"Length must be positive, got {n}")
    seen: set[int] = set()
    cosets = []
    for start in range(n):
        if start in seen:
            continue
        coset = []
        i = start
        while i not in coset:
            coset.append(i)
            i = i * q % n
        seen.update(coset)
        cosets.append(sorted(coset))
    return cosets


def iter_monic(spec: FieldSpec, degree: int) -> Iterator[Poly]:
    """Monic polynomials of a given degree in lexicographic coefficient order."""
    elements = list(iter_field(spec))
    for index in numpy.ndindex((len(elements),) * degree):
        yield Poly.of(spec, [elements[i] for i in index] + [spec.one])


def require_coprime(n: int, spec: FieldSpec) -> None:
    if n < 1:
        raise InvalidSpec(f"Length must be positive, got {n}")
    if n % spec.p == 0:
        raise NotCoprime(f"Length {n} is divisible by the characteristic {spec.p}")


def factor_xn_minus_1(n: int, spec: FieldSpec, limit: Optional[int] = None) -> list[Poly]:
    """Distinct monic irreducible factors of x^n - 1, sorted by `Poly.sort_key`.

    The cyclotomic coset sizes give the factor degrees; factors of each degree are
    found by trial division in increasing degree order, so every divisor found is
    irreducible. The last remaining cofactor is taken as is.
    """
    require_coprime(n, spec)
    target = Poly.x_n_minus_1(spec, n)
    pending = Counter(len(c) for c in cyclotomic_cosets(n, spec.order))
    remaining = target
    factors: list[Poly] = []
    for degree in sorted(pending):
        for candidate in _candidates(spec, degree, pending, limit):
            if sum(pending.values()) == 1:
                break
            if candidate.divides(remaining):
                factors.append(candidate)
                remaining = remaining // candidate
                pending[degree] -= 1
                if pending[degree] == 0:
                    break
        if sum(pending.values()) == 1:
            factors.append(remaining.monic())
            pending.clear()
            break
    factors.sort(key=lambda f: f.sort_key)
    if self_checks_enabled():
        assert reduce(mul, factors) == target, f"Factors of x^{n}-1 do not multiply back"
    logger.debug(f"x^{n}-1 over {spec}: {', '.join(str(f) for f in factors)}")
    return factors


def _candidates(
    spec: FieldSpec, degree: int, pending: Counter, limit: Optional[int]
) -> Iterator[Poly]:
    if pending[degree] == 0 or sum(pending.values()) == 1:
        return iter(())
    check_limit(spec.order**degree, f"monic polynomials of degree {degree}", limit)
    return iter_monic(spec, degree)


def divisors_of_xn_minus_1(
    n: int, spec: FieldSpec, limit: Optional[int] = None
) -> list[Poly]:
    """All 2^m monic divisors of x^n - 1 (m irreducible factors), sorted."""
    factors = factor_xn_minus_1(n, spec, limit)
    check_limit(2 ** len(factors), f"divisors of x^{n}-1", limit)
    divisors = set()
    for bits in numpy.ndindex((2,) * len(factors)):
        divisors.add(
            reduce(mul, (f for f, bit in zip(factors, bits) if bit), Poly.one(spec))
        )
    return sorted(divisors, key=lambda f: f.sort_key)


def reciprocal(h: Poly) -> Poly:
    """x^{deg h} h(1/x), made monic."""
    if h.is_zero:
        raise ZeroPolynomial("The zero polynomial has no reciprocal")
    return Poly.of(h.spec, list(reversed(h.coeffs))).monic()


@dataclass(frozen=True)
class QuotientElement:
    """Element of F_{p^k}[x]/(x^n - 1), kept reduced (deg < n)."""

    n: int
    poly: Poly

    def __post_init__(self):
        if self.n < 1:
            raise InvalidSpec(f"Length must be positive, got {self.n}")
        if len(self.poly.coeffs) > self.n:
            folded = [self.poly.spec.zero] * self.n
            for i, c in enumerate(self.poly.coeffs):
                folded[i % self.n] = folded[i % self.n] + c
            object.__setattr__(self, "poly", Poly.of(self.poly.spec, folded))

    @classmethod
    def from_vector(cls, spec: FieldSpec, vector: Sequence[FieldElement]) -> "QuotientElement":
        return cls(len(vector), Poly.of(spec, vector))

    @property
    def spec(self) -> FieldSpec:
        return self.poly.spec

    @property
    def is_zero(self) -> bool:
        return self.poly.is_zero

    def to_vector(self) -> tuple[FieldElement, ...]:
        return tuple(self.poly.coefficient(i) for i in range(self.n))

    def _check(self, other: "QuotientElement") -> None:
        if other.n != self.n:
            raise MixedParameters(f"Quotient elements of lengths {self.n} and {other.n}")

    def __add__(self, other: "QuotientElement") -> "QuotientElement":
        self._check(other)
        return QuotientElement(self.n, self.poly + other.poly)

    def __neg__(self) -> "QuotientElement":
        return QuotientElement(self.n, -self.poly)

    def __sub__(self, other: "QuotientElement") -> "QuotientElement":
        self._check(other)
        return QuotientElement(self.n, self.poly - other.poly)

    def __mul__(self, other: Union["QuotientElement", Coefficient]) -> "QuotientElement":
        if isinstance(other, QuotientElement):
            self._check(other)
            return QuotientElement(self.n, self.poly * other.poly)
        return QuotientElement(self.n, self.poly.scale(other))

    @property
    def is_idempotent(self) -> bool:
        return self * self == self

    def __str__(self):
        return str(self.poly)


def eval_at_x_inverse(e: QuotientElement) -> QuotientElement:
    """Substitute x -> x^{n-1}: coefficient j moves to position (n - j) mod n."""
    moved = [e.spec.zero] * e.n
    for j, c in enumerate(e.poly.coeffs):
        moved[(e.n - j) % e.n] = c
    return QuotientElement(e.n, Poly.of(e.spec, moved))
