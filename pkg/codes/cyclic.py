"""Cyclic codes over F_{p^k} of length n prime to p, as ideals <g> of F_{p^k}[x]/(x^n - 1)."""

import itertools
import logging
import math
import re
from dataclasses import dataclass
from functools import cached_property, reduce
from operator import mul
from typing import Optional, Sequence, Union

import numpy

from algebra.gf import FieldElement, FieldSpec, enumerate_field
from algebra.polyring import (
    Poly,
    QuotientElement,
    eval_at_x_inverse,
    gcd_many,
    lcm_many,
    poly_ext_gcd,
    poly_gcd,
    reciprocal,
    require_coprime,
)
from utils.common import (
    LimitExceeded,
    MixedParameters,
    NotADivisor,
    NotCoprime,
    NotIdempotent,
    ParseError,
    ZeroPolynomial,
    check_limit,
    fault_active,
    self_checks_enabled,
)

logger = logging.getLogger(__name__)

MAX_SUBSET_TERMS = 12
"""Largest number of codes combined by explicit subset enumeration (2^t - 1 terms)."""

INFINITE_WEIGHT = math.inf

Vector = tuple[FieldElement, ...]

_CODE_PATTERN = re.compile(
    r"\s*CyclicCode\{\s*field=(GF\([^)]*\))\s*,\s*n=(\d+)\s*,\s*g=(.+?)\s*\}\s*"
)


def hamming_weight(vector: Sequence) -> int:
    return sum(1 for c in vector if c)


def shift_codeword(c: Sequence) -> tuple:
    """sigma(c_0, ..., c_{n-1}) = (c_{n-1}, c_0, ..., c_{n-2})."""
    c = tuple(c)
    return c[-1:] + c[:-1]


def format_vector(vector: Sequence) -> str:
    return " ".join(str(c) for c in vector)


@dataclass(frozen=True)
class CyclicCode:
    """The ideal generated by a monic divisor g of x^n - 1.

    Attributes:
        spec: The field F_{p^k}.
        n: Code length, prime to p.
        generator: Monic g dividing x^n - 1; equal codes have equal generators.
    """

    spec: FieldSpec
    n: int
    generator: Poly

    def __post_init__(self):
        require_coprime(self.n, self.spec)
        if self.generator.spec != self.spec:
            raise MixedParameters(f"Generator {self.generator!r} is not over {self.spec}")
        if not self.generator.is_monic:
            raise NotADivisor(f"Generator {self.generator} is not monic")
        if not self.generator.divides(Poly.x_n_minus_1(self.spec, self.n)):
            raise NotADivisor(f"{self.generator} does not divide x^{self.n}-1")

    @classmethod
    def from_generator(cls, g: Poly, n: int, strict: bool = True) -> "CyclicCode":
        """The code <monic(gcd(g, x^n - 1))>.

        Raises:
            NotADivisor: In strict mode, if g does not divide x^n - 1.
        """
        require_coprime(n, g.spec)
        if g.is_zero:
            raise ZeroPolynomial("A cyclic code needs a nonzero generator")
        target = Poly.x_n_minus_1(g.spec, n)
        if strict and not g.divides(target):
            raise NotADivisor(f"{g} does not divide x^{n}-1")
        return cls(g.spec, n, poly_gcd(g, target))

    @classmethod
    def from_idempotent(cls, e: QuotientElement) -> "CyclicCode":
        if not e.is_idempotent:
            raise NotIdempotent(f"{e} is not idempotent modulo x^{e.n}-1")
        target = Poly.x_n_minus_1(e.spec, e.n)
        return cls.from_generator(poly_gcd(e.poly, target), e.n)

    @classmethod
    def full(cls, spec: FieldSpec, n: int) -> "CyclicCode":
        return cls(spec, n, Poly.one(spec))

    @classmethod
    def zero(cls, spec: FieldSpec, n: int) -> "CyclicCode":
        return cls(spec, n, Poly.x_n_minus_1(spec, n))

    @classmethod
    def parse(cls, text: str) -> "CyclicCode":
        """Parse `CyclicCode{field=GF(3), n=4, g=x^2+1}`."""
        match = _CODE_PATTERN.fullmatch(text)
        if not match:
            raise ParseError(f"Invalid cyclic code text {text!r}")
        spec = FieldSpec.parse(match.group(1))
        return cls.from_generator(Poly.parse(spec, match.group(3)), int(match.group(2)))

    @property
    def dimension(self) -> int:
        return self.n - len(self.generator.coeffs) + 1

    @property
    def cardinality(self) -> int:
        return self.spec.order**self.dimension

    @cached_property
    def check_polynomial(self) -> Poly:
        """h with g*h = x^n - 1."""
        return Poly.x_n_minus_1(self.spec, self.n) // self.generator

    @cached_property
    def generating_idempotent(self) -> QuotientElement:
        """e = s*g mod x^n - 1 where s*g + t*h = 1."""
        g, h = self.generator, self.check_polynomial
        d, s, _ = poly_ext_gcd(g, h)
        if d.degree != 0:
            raise NotCoprime(f"gcd({g}, {h}) = {d}; x^{self.n}-1 is not squarefree")
        e = QuotientElement(self.n, s * g)
        if self_checks_enabled():
            target = Poly.x_n_minus_1(self.spec, self.n)
            assert e.is_idempotent, f"{e} is not idempotent"
            assert poly_gcd(e.poly, target) == g, f"gcd({e}, x^{self.n}-1) != {g}"
            assert e * QuotientElement(self.n, g) == QuotientElement(self.n, g), (
                f"{e} is not a unity of {self}"
            )
        return e

    @property
    def is_zero_code(self) -> bool:
        return self.dimension == 0

    @property
    def is_full_code(self) -> bool:
        return self.dimension == self.n

    def enumerate_codewords(self, limit: Optional[int] = None) -> list[Vector]:
        """Coefficient vectors of a*g mod x^n - 1 for deg a < dim, lexicographic in a."""
        check_limit(self.cardinality, f"the codewords of {self}", limit)
        elements = enumerate_field(self.spec)
        codewords = []
        for index in numpy.ndindex((len(elements),) * self.dimension):
            a = Poly.of(self.spec, [elements[i] for i in index])
            codewords.append(QuotientElement(self.n, a * self.generator).to_vector())
        if self_checks_enabled():
            assert len(set(codewords)) == self.cardinality, f"Duplicate codewords in {self}"
        return codewords

    def contains(self, c: Sequence[FieldElement]) -> bool:
        if len(c) != self.n:
            raise MixedParameters(f"Vector of length {len(c)} tested against length {self.n}")
        return self.generator.divides(Poly.of(self.spec, c))

    def min_weight(self, limit: Optional[int] = None) -> Union[int, float]:
        """Minimum Hamming weight of a nonzero codeword; INFINITE_WEIGHT for the zero code."""
        if self.is_zero_code:
            return INFINITE_WEIGHT
        weights = (hamming_weight(c) for c in self.enumerate_codewords(limit))
        return min(w for w in weights if w)

    def is_self_orthogonal(self) -> bool:
        """C is inside its dual, i.e. the dual generator divides g."""
        return dual(self).generator.divides(self.generator)

    def is_self_dual(self) -> bool:
        return dual(self) == self

    def __str__(self):
        return f"CyclicCode{{field={self.spec}, n={self.n}, g={self.generator}}}"


def _common_parameters(codes: Sequence[CyclicCode]) -> tuple[FieldSpec, int]:
    if not codes:
        raise MixedParameters("At least one code is required")
    spec, n = codes[0].spec, codes[0].n
    for code in codes[1:]:
        if code.spec != spec or code.n != n:
            raise MixedParameters(
                f"Codes over {spec} of length {n} and over {code.spec} of length {code.n}"
            )
    return spec, n


def intersect(codes: Sequence[CyclicCode]) -> CyclicCode:
    """Generator lcm(g_i); generating idempotent prod(e_i)."""
    spec, n = _common_parameters(codes)
    result = CyclicCode.from_generator(lcm_many([c.generator for c in codes]), n)
    if self_checks_enabled():
        product = reduce(mul, (c.generating_idempotent for c in codes))
        assert product == result.generating_idempotent, (
            f"Product of idempotents {product} != {result.generating_idempotent}"
        )
    return result


def inclusion_exclusion_idempotent(idempotents: Sequence[QuotientElement]) -> QuotientElement:
    """sum e_i - sum e_i e_j + ... + (-1)^{t-1} prod e_i.

    Above MAX_SUBSET_TERMS terms the recurrence e <- e + e_t - e*e_t is used.
    """
    if len(idempotents) > MAX_SUBSET_TERMS:
        return reduce(lambda e, f: e + f - e * f, idempotents)
    total = idempotents[0] - idempotents[0]
    for size in range(1, len(idempotents) + 1):
        for subset in itertools.combinations(idempotents, size):
            term = reduce(mul, subset)
            total = total + term if size % 2 else total - term
    return total


def sum_codes(codes: Sequence[CyclicCode]) -> CyclicCode:
    """Generator gcd(g_i); generating idempotent by inclusion-exclusion."""
    spec, n = _common_parameters(codes)
    result = CyclicCode.from_generator(gcd_many([c.generator for c in codes]), n)
    if self_checks_enabled():
        combined = inclusion_exclusion_idempotent([c.generating_idempotent for c in codes])
        assert combined == result.generating_idempotent, (
            f"Inclusion-exclusion idempotent {combined} != {result.generating_idempotent}"
        )
    return result


def dual(code: CyclicCode) -> CyclicCode:
    """Generator reciprocal(h); generating idempotent 1 - e(x^{-1})."""
    h = code.check_polynomial
    generator = h if fault_active("dual-check-polynomial") else reciprocal(h)
    result = CyclicCode.from_generator(generator, code.n)
    if self_checks_enabled():
        one = QuotientElement(code.n, Poly.one(code.spec))
        expected = one - eval_at_x_inverse(code.generating_idempotent)
        assert result.generating_idempotent == expected, (
            f"Dual idempotent {result.generating_idempotent} != {expected}"
        )
        assert result.dimension + code.dimension == code.n
    return result


def dim_inclusion_exclusion_check(codes: Sequence[CyclicCode]) -> bool:
    """dim(sum C_i) against the alternating sum of dimensions of all intersections."""
    _common_parameters(codes)
    if len(codes) > MAX_SUBSET_TERMS:
        raise LimitExceeded(
            f"{len(codes)} codes need {2 ** len(codes) - 1} intersections; at most {MAX_SUBSET_TERMS} codes"
        )
    alternating = 0
    for size in range(1, len(codes) + 1):
        for subset in itertools.combinations(codes, size):
            sign = 1 if size % 2 else -1
            alternating += sign * intersect(subset).dimension
    expected = sum_codes(codes).dimension
    logger.debug(f"dim of sum {expected}, inclusion-exclusion {alternating}")
    return expected == alternating
