"""Codes over R = e1*F + e2*F + e3*F assembled from three cyclic codes over F = F_{p^k}.

A codeword stores one `Triple` per coordinate; every operation on codes acts
componentwise on (C1, C2, C3).
"""

import itertools
import logging
from dataclasses import dataclass
from functools import reduce
from operator import mul
from typing import Iterator, Optional, Sequence, Union

from algebra.gf import FIELD_SYMBOL, FieldElement, FieldSpec
from algebra.polyring import POLY_SYMBOL, Poly, QuotientElement
from algebra.ring_r import (
    RING_SYMBOL,
    RingElement,
    RingSpec,
    Triple,
    idempotents,
    ring_to_triple,
    triple_to_ring,
)
from codes import cyclic
from codes.cyclic import INFINITE_WEIGHT, CyclicCode, hamming_weight, shift_codeword
from utils.common import (
    MixedParameters,
    NotIdempotentComponents,
    check_limit,
    self_checks_enabled,
)
from utils.text_format import format_monomial, join_terms, parse_rational_polynomial

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RingPolynomial:
    """Polynomial in x with coefficients in R_r, lowest degree first, trimmed."""

    ring: RingSpec
    coeffs: tuple[RingElement, ...]

    def __post_init__(self):
        coeffs = list(self.coeffs)
        while coeffs and coeffs[-1].is_zero:
            coeffs.pop()
        object.__setattr__(self, "coeffs", tuple(coeffs))

    @classmethod
    def from_field_poly(
        cls, ring: RingSpec, poly: Poly, scale: Optional[RingElement] = None
    ) -> "RingPolynomial":
        """Embed a polynomial over F, optionally multiplied by a ring element."""
        scale = scale if scale is not None else ring.one
        return cls(ring, tuple(scale * c for c in poly.coeffs))

    @classmethod
    def from_components(cls, ring: RingSpec, polys: Sequence[Poly]) -> "RingPolynomial":
        """e1*f1 + e2*f2 + e3*f3."""
        terms = [
            cls.from_field_poly(ring, f, e) for e, f in zip(idempotents(ring), polys)
        ]
        return reduce(lambda a, b: a + b, terms)

    @classmethod
    def parse(cls, ring: RingSpec, text: str) -> "RingPolynomial":
        """Parse the printed form, e.g. `v^2*x+1+v+2*v^2`; coefficients use `v` and `a`."""
        terms = parse_rational_polynomial(text, [POLY_SYMBOL, RING_SYMBOL, FIELD_SYMBOL])
        degree = max((m[0] for m in terms), default=-1)
        coeffs = [ring.zero] * (degree + 1)
        for (x_exp, v_exp, a_exp), c in terms.items():
            scalar = ring.field.from_fraction(c) * ring.field.generator**a_exp
            coeffs[x_exp] = coeffs[x_exp] + ring.v_power(v_exp) * scalar
        return cls(ring, tuple(coeffs))

    @classmethod
    def one(cls, ring: RingSpec) -> "RingPolynomial":
        return cls(ring, (ring.one,))

    def coefficient(self, i: int) -> RingElement:
        return self.coeffs[i] if i < len(self.coeffs) else self.ring.zero

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "RingPolynomial") -> "RingPolynomial":
        size = max(len(self.coeffs), len(other.coeffs))
        return RingPolynomial(
            self.ring, tuple(self.coefficient(i) + other.coefficient(i) for i in range(size))
        )

    def __neg__(self) -> "RingPolynomial":
        return RingPolynomial(self.ring, tuple(-c for c in self.coeffs))

    def __sub__(self, other: "RingPolynomial") -> "RingPolynomial":
        return self + (-other)

    def mul_mod(self, other: "RingPolynomial", n: int) -> "RingPolynomial":
        """Product in R_r[x]/(x^n - 1)."""
        out = [self.ring.zero] * n
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[(i + j) % n] = out[(i + j) % n] + a * b
        return RingPolynomial(self.ring, tuple(out))

    def reduce_mod(self, n: int) -> "RingPolynomial":
        """Fold exponents modulo n, i.e. reduce modulo x^n - 1."""
        return RingPolynomial(self.ring, self.to_vector(n))

    def to_vector(self, n: int) -> tuple[RingElement, ...]:
        out = [self.ring.zero] * n
        for i, c in enumerate(self.coeffs):
            out[i % n] = out[i % n] + c
        return tuple(out)

    def is_idempotent(self, n: int) -> bool:
        return self.mul_mod(self, n) == self.reduce_mod(n)

    def eval_at_x_inverse(self, n: int) -> "RingPolynomial":
        moved = [self.ring.zero] * n
        for j, c in enumerate(self.to_vector(n)):
            moved[(n - j) % n] = c
        return RingPolynomial(self.ring, tuple(moved))

    def components(self) -> tuple[Poly, Poly, Poly]:
        """(f1, f2, f3) with self = e1*f1 + e2*f2 + e3*f3.

        Raises:
            NotInSubring: If some coefficient is outside the subring R.
        """
        field = self.ring.field
        triples = [ring_to_triple(c) for c in self.coeffs]
        return (
            Poly.of(field, [t.s for t in triples]),
            Poly.of(field, [t.t for t in triples]),
            Poly.of(field, [t.u for t in triples]),
        )

    def __str__(self):
        pieces = [
            format_monomial(str(c), "x", i)
            for i, c in reversed(list(enumerate(self.coeffs)))
            if c
        ]
        return join_terms(pieces)


@dataclass(frozen=True)
class RCodeword:
    """(x_1, ..., x_n) in R^n with x_i = e1*s_i + e2*t_i + e3*u_i."""

    ring: RingSpec
    triples: tuple[Triple, ...]

    @classmethod
    def from_components(
        cls, ring: RingSpec, s: Sequence[FieldElement], t: Sequence[FieldElement], u: Sequence[FieldElement]
    ) -> "RCodeword":
        if not len(s) == len(t) == len(u):
            raise MixedParameters("Component vectors of different lengths")
        return cls(ring, tuple(Triple(*c) for c in zip(s, t, u)))

    @classmethod
    def from_ring_elements(cls, ring: RingSpec, elements: Sequence[RingElement]) -> "RCodeword":
        return cls(ring, tuple(ring_to_triple(x) for x in elements))

    @property
    def n(self) -> int:
        return len(self.triples)

    def to_ring_elements(self) -> tuple[RingElement, ...]:
        return tuple(triple_to_ring(t, self.ring) for t in self.triples)

    def component(self, i: int) -> tuple[FieldElement, ...]:
        return tuple(tuple(t)[i] for t in self.triples)

    def __add__(self, other: "RCodeword") -> "RCodeword":
        return RCodeword(self.ring, tuple(a + b for a, b in zip(self.triples, other.triples)))

    def shift(self) -> "RCodeword":
        return RCodeword(self.ring, shift_codeword(self.triples))

    def inner_product(self, other: "RCodeword") -> Triple:
        """sum x_i y_i, computed componentwise in the subring."""
        zero = self.ring.field.zero
        return reduce(
            lambda a, b: a + b,
            (a * b for a, b in zip(self.triples, other.triples)),
            Triple(zero, zero, zero),
        )

    @property
    def weight(self) -> int:
        """Number of nonzero coordinates over R."""
        return sum(1 for t in self.triples if not t.is_zero)

    def __str__(self):
        return " ".join(str(x) for x in self.to_ring_elements())


def gray_map(w: RCodeword) -> tuple[FieldElement, ...]:
    """phi(w) = (s | t | u): block layout of length 3n."""
    return w.component(0) + w.component(1) + w.component(2)


def interleave(vector: Sequence, n: int) -> tuple:
    """Block layout (s | t | u) to (s_1, t_1, u_1, ..., s_n, t_n, u_n)."""
    if len(vector) != 3 * n:
        raise MixedParameters(f"Expected a vector of length {3 * n}, got {len(vector)}")
    return tuple(vector[block * n + i] for i in range(n) for block in range(3))


def deinterleave(vector: Sequence, n: int) -> tuple:
    if len(vector) != 3 * n:
        raise MixedParameters(f"Expected a vector of length {3 * n}, got {len(vector)}")
    return tuple(vector[3 * i + block] for block in range(3) for i in range(n))


def block_shift(vector: Sequence, n: int) -> tuple:
    """T(s | t | u) = (sigma(s) | sigma(t) | sigma(u))."""
    return tuple(
        itertools.chain.from_iterable(
            shift_codeword(vector[block * n : (block + 1) * n]) for block in range(3)
        )
    )


@dataclass(frozen=True)
class GrayImage:
    """phi(C) = C1 (x) C2 (x) C3, a code of length 3n over F."""

    components: tuple[CyclicCode, CyclicCode, CyclicCode]

    @property
    def length(self) -> int:
        return 3 * self.components[0].n

    @property
    def cardinality(self) -> int:
        return reduce(mul, (c.cardinality for c in self.components))

    def __str__(self):
        return " (x) ".join(str(c) for c in self.components)


@dataclass(frozen=True)
class RCode:
    """C = e1*C1 + e2*C2 + e3*C3 over R of length n."""

    ring: RingSpec
    c1: CyclicCode
    c2: CyclicCode
    c3: CyclicCode

    def __post_init__(self):
        for code in self.components:
            if code.spec != self.ring.field:
                raise MixedParameters(f"{code} is not over the field of {self.ring}")
            if code.n != self.c1.n:
                raise MixedParameters(
                    f"Components of lengths {self.c1.n} and {code.n} in one code"
                )

    @property
    def components(self) -> tuple[CyclicCode, CyclicCode, CyclicCode]:
        return (self.c1, self.c2, self.c3)

    @property
    def n(self) -> int:
        return self.c1.n

    @property
    def field(self) -> FieldSpec:
        return self.ring.field

    @property
    def cardinality(self) -> int:
        """(p^k)^{3n - deg g1 - deg g2 - deg g3} = |C1||C2||C3|."""
        degrees = sum(len(c.generator.coeffs) - 1 for c in self.components)
        size = self.field.order ** (3 * self.n - degrees)
        if self_checks_enabled():
            assert size == reduce(mul, (c.cardinality for c in self.components))
        return size

    def enumerate_codewords(self, limit: Optional[int] = None) -> list[RCodeword]:
        """Lexicographic over C1 x C2 x C3."""
        check_limit(self.cardinality, f"the codewords of {self}", limit)
        return list(self.iter_codewords(limit))

    def iter_codewords(self, limit: Optional[int] = None) -> Iterator[RCodeword]:
        per_component = [c.enumerate_codewords(limit) for c in self.components]
        for s, t, u in itertools.product(*per_component):
            yield RCodeword.from_components(self.ring, s, t, u)

    def contains(self, w: RCodeword) -> bool:
        return all(code.contains(w.component(i)) for i, code in enumerate(self.components))

    def __str__(self):
        return (
            f"RCode{{ring={self.ring}, n={self.n}, g1={self.c1.generator}, "
            f"g2={self.c2.generator}, g3={self.c3.generator}}}"
        )


def build(ring: RingSpec, c1: CyclicCode, c2: CyclicCode, c3: CyclicCode) -> RCode:
    """{e1*c1 + e2*c2 + e3*c3}; closed under the shift since every Ci is cyclic."""
    code = RCode(ring, c1, c2, c3)
    if self_checks_enabled() and code.cardinality <= 2**12:
        words = set(code.enumerate_codewords())
        assert all(w.shift() in words for w in words), f"{code} is not shift-closed"
    return code


def gray_map_code(code: RCode) -> GrayImage:
    return GrayImage(code.components)


def generators_over_r(code: RCode) -> tuple[RingPolynomial, RingPolynomial, RingPolynomial]:
    """(e1*g1, e2*g2, e3*g3), unreduced."""
    return tuple(  # pyright: ignore[reportReturnType]
        RingPolynomial.from_field_poly(code.ring, c.generator, e)
        for e, c in zip(idempotents(code.ring), code.components)
    )


def single_generator(code: RCode) -> RingPolynomial:
    """g with <g> = C, written coefficientwise in v.

    g = (1/r) sum_{i<r} v^i (g1 - g2) + v^r ((1/r) g1 + ((r-1)/r) g2 - g3) + g3,
    which is the expansion of e1*g1 + e2*g2 + e3*g3; g = g1 when all three agree.
    """
    ring = code.ring
    field, r = ring.field, ring.r
    r_inv = field.element(r).inverse()
    rest = field.element(r - 1) * r_inv
    g1, g2, g3 = (c.generator for c in code.components)
    size = max(len(g.coeffs) for g in (g1, g2, g3))
    coeffs = []
    for j in range(size):
        a, b, c = g1.coefficient(j), g2.coefficient(j), g3.coefficient(j)
        middle = [(a - b) * r_inv] * (r - 1)
        coeffs.append(ring.element([c] + middle + [a * r_inv + b * rest - c]))
    g = RingPolynomial(ring, tuple(coeffs))
    if self_checks_enabled():
        expanded = reduce(lambda x, y: x + y, generators_over_r(code))
        assert g == expanded, f"Single generator {g} != {expanded}"
    return g


def idempotent_over_r(code: RCode) -> RingPolynomial:
    """e = e1*f1 + e2*f2 + e3*f3 with f_i the generating idempotent of C_i."""
    n = code.n
    e = RingPolynomial.from_components(
        code.ring, [c.generating_idempotent.poly for c in code.components]
    )
    if self_checks_enabled():
        assert e.is_idempotent(n), f"{e} is not idempotent"
        for generator in generators_over_r(code):
            assert e.mul_mod(generator, n) == generator.reduce_mod(n), (
                f"{e} is not a unity on {generator}"
            )
    return e


def dual(code: RCode) -> RCode:
    """C^perp = e1*C1^perp + e2*C2^perp + e3*C3^perp."""
    c1, c2, c3 = (cyclic.dual(c) for c in code.components)
    return RCode(code.ring, c1, c2, c3)


def dual_idempotent(
    code: RCode, component_idempotents: Optional[Sequence[QuotientElement]] = None
) -> RingPolynomial:
    """1 - e1*f1(x^{-1}) - e2*f2(x^{-1}) - e3*f3(x^{-1}).

    Args:
        component_idempotents: The generating idempotents f_i of the components;
            computed from the code when omitted.

    Raises:
        NotIdempotentComponents: If a supplied f_i is not the idempotent generator of C_i.
    """
    if component_idempotents is None:
        component_idempotents = [c.generating_idempotent for c in code.components]
    if len(component_idempotents) != 3:
        raise NotIdempotentComponents("Exactly three component idempotents are needed")
    for i, (f, c) in enumerate(zip(component_idempotents, code.components)):
        if f.n != code.n or not f.is_idempotent:
            raise NotIdempotentComponents(f"f{i + 1} = {f} is not idempotent")
        if CyclicCode.from_idempotent(f) != c:
            raise NotIdempotentComponents(f"f{i + 1} = {f} does not generate {c}")
    n = code.n
    e = RingPolynomial.from_components(code.ring, [f.poly for f in component_idempotents])
    result = (RingPolynomial.one(code.ring) - e.eval_at_x_inverse(n)).reduce_mod(n)
    if self_checks_enabled():
        expected = idempotent_over_r(dual(code))
        assert result == expected, f"Dual idempotent {result} != {expected}"
    return result


def is_self_dual(code: RCode) -> bool:
    result = dual(code) == code
    if self_checks_enabled():
        assert result == all(c.is_self_dual() for c in code.components)
    return result


def is_self_orthogonal(code: RCode) -> bool:
    return all(c.is_self_orthogonal() for c in code.components)


def is_quasi_cyclic_order3(code: RCode, limit: Optional[int] = None) -> bool:
    """phi(C) is invariant under the simultaneous block shift."""
    images = {gray_map(w) for w in code.enumerate_codewords(limit)}
    return all(block_shift(v, code.n) in images for v in images)


def min_weight(code: RCode, limit: Optional[int] = None) -> Union[int, float]:
    """Minimum number of nonzero R-coordinates over nonzero codewords."""
    weights = [w.weight for w in code.enumerate_codewords(limit)]
    return min((w for w in weights if w), default=INFINITE_WEIGHT)


def gray_min_weight(code: RCode, limit: Optional[int] = None) -> Union[int, float]:
    """Minimum Hamming weight of phi(C) over F."""
    weights = [hamming_weight(gray_map(w)) for w in code.enumerate_codewords(limit)]
    return min((w for w in weights if w), default=INFINITE_WEIGHT)


def combined_idempotent_check(
    ring: RingSpec, parts: Sequence[QuotientElement]
) -> tuple[bool, bool]:
    """Return (e1*f1 + e2*f2 + e3*f3 idempotent, every f_i idempotent); the two agree."""
    n = parts[0].n
    combined = RingPolynomial.from_components(ring, [f.poly for f in parts])
    return combined.is_idempotent(n), all(f.is_idempotent for f in parts)
