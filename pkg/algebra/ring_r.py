"""Arithmetic in R_r = F_{p^k}[v]/(v^{r+1} - v) and its three orthogonal idempotents.

Elements of the subring R = e1*F + e2*F + e3*F convert to and from `Triple` form,
where arithmetic is componentwise.
"""

import itertools
import logging
import math
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional, Sequence, Union

from algebra.gf import (
    FIELD_SYMBOL,
    FieldElement,
    FieldSpec,
    Scalar,
    format_int_poly,
    iter_field,
)
from utils.common import (
    InvalidSpec,
    NotInSubring,
    ParseError,
    SpecMismatch,
    check_limit,
)
from utils.text_format import format_monomial, join_terms, parse_rational_polynomial

logger = logging.getLogger(__name__)

RING_SYMBOL = "v"


@dataclass(frozen=True)
class RingSpec:
    """R_r over a field; requires r > 1 and gcd(r, p) = 1."""

    field: FieldSpec
    r: int

    def __post_init__(self):
        if self.r <= 1:
            raise InvalidSpec(f"r must be greater than 1, got {self.r}")
        if math.gcd(self.r, self.field.p) != 1:
            raise InvalidSpec(
                f"r = {self.r} is not invertible modulo the characteristic {self.field.p}"
            )

    @classmethod
    def create(cls, p: int, k: int, r: int) -> "RingSpec":
        return cls(FieldSpec.create(p, k), r)

    @classmethod
    def parse(cls, text: str) -> "RingSpec":
        """Parse `R(q; r)` or `R(q; r; modulus)`."""
        match = re.fullmatch(
            r"\s*R\(\s*(\d+)\s*;\s*(\d+)\s*(?:;\s*([^)]*?)\s*)?\)\s*", text
        )
        if not match:
            raise ParseError(f"Invalid ring text {text!r}; expected R(q; r)")
        q, r, modulus = match.groups()
        field_text = f"GF({q}; {modulus})" if modulus else f"GF({q})"
        return cls(FieldSpec.parse(field_text), int(r))

    @property
    def size(self) -> int:
        """|R_r| = p^{k(r+1)}."""
        return self.field.order ** (self.r + 1)

    @property
    def zero(self) -> "RingElement":
        return RingElement(self, (self.field.zero,) * (self.r + 1))

    @property
    def one(self) -> "RingElement":
        return self.embed(self.field.one)

    def embed(self, c: Scalar) -> "RingElement":
        c = self.field.element(c) if isinstance(c, int) else c
        return RingElement(self, (c,) + (self.field.zero,) * self.r)

    def v_power(self, j: int) -> "RingElement":
        """v^j reduced; v^0 = 1."""
        coeffs = [self.field.zero] * (self.r + 1)
        coeffs[reduce_exponent(j, self.r)] = self.field.one
        return RingElement(self, tuple(coeffs))

    def element(self, coeffs: Sequence[Scalar]) -> "RingElement":
        if len(coeffs) > self.r + 1:
            raise SpecMismatch(f"Too many coefficients for {self}: {len(coeffs)}")
        values = [self.field.element(c) if isinstance(c, int) else c for c in coeffs]
        values += [self.field.zero] * (self.r + 1 - len(values))
        return RingElement(self, tuple(values))

    def parse_element(self, text: str) -> "RingElement":
        """Parse `a0 + a1*v + ... + ar*v^r`; higher powers of v are reduced."""
        terms = parse_rational_polynomial(text, [RING_SYMBOL, FIELD_SYMBOL])
        result = self.zero
        for (v_exp, a_exp), c in terms.items():
            scalar = self.field.from_fraction(c) * self.field.generator**a_exp
            result = result + self.v_power(v_exp) * scalar
        return result

    def __str__(self):
        q = self.field.order
        if self.field.k == 1 or self.field.has_default_modulus:
            return f"R({q}; {self.r})"
        modulus = format_int_poly(self.field.modulus)
        return f"R({q}; {self.r}; {modulus})"


def reduce_exponent(j: int, r: int) -> int:
    """Exponent of v^j after v^{r+1} = v: j > r maps to ((j - 1) mod r) + 1."""
    if j < 0:
        raise InvalidSpec(f"Negative power of v: {j}")
    return j if j <= r else (j - 1) % r + 1


@dataclass(frozen=True)
class RingElement:
    """Coefficients of 1, v, ..., v^r; always fully reduced."""

    spec: RingSpec
    coeffs: tuple[FieldElement, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.spec.r + 1:
            raise SpecMismatch(
                f"Ring element needs {self.spec.r + 1} coefficients, got {len(self.coeffs)}"
            )
        for c in self.coeffs:
            if c.spec != self.spec.field:
                raise SpecMismatch(f"Coefficient {c!r} is not in {self.spec.field}")

    def _check(self, other: "RingElement") -> None:
        if other.spec != self.spec:
            raise SpecMismatch(f"Cannot combine elements of {self.spec} and {other.spec}")

    def __add__(self, other: "RingElement") -> "RingElement":
        self._check(other)
        return RingElement(
            self.spec, tuple(x + y for x, y in zip(self.coeffs, other.coeffs))
        )

    def __neg__(self) -> "RingElement":
        return RingElement(self.spec, tuple(-x for x in self.coeffs))

    def __sub__(self, other: "RingElement") -> "RingElement":
        return self + (-other)

    def __mul__(self, other: Union["RingElement", Scalar]) -> "RingElement":
        if not isinstance(other, RingElement):
            return RingElement(self.spec, tuple(x * other for x in self.coeffs))
        self._check(other)
        r = self.spec.r
        out = [self.spec.field.zero] * (r + 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    if y:
                        slot = reduce_exponent(i + j, r)
                        out[slot] = out[slot] + x * y
        return RingElement(self.spec, tuple(out))

    __rmul__ = __mul__

    @property
    def is_zero(self) -> bool:
        return all(c.is_zero for c in self.coeffs)

    def __bool__(self):
        return not self.is_zero

    @property
    def sort_key(self) -> tuple:
        return tuple(c.sort_key for c in self.coeffs)

    def __str__(self):
        pieces = [
            format_monomial(str(c), RING_SYMBOL, i)
            for i, c in enumerate(self.coeffs)
            if c
        ]
        return join_terms(pieces)

    def __repr__(self):
        return f"RingElement({self}, {self.spec})"


def ring_is_idempotent(x: RingElement) -> bool:
    return x * x == x


@lru_cache(maxsize=None)
def idempotents(spec: RingSpec) -> tuple[RingElement, RingElement, RingElement]:
    """e1 = (1/r)(v + ... + v^r), e2 = v^r - e1, e3 = 1 - v^r.

    Written out, e2 = -(1/r)(v + ... + v^{r-1}) + ((r-1)/r) v^r. The Peirce
    conditions are checked on every construction.
    """
    field = spec.field
    r_inv = field.element(spec.r).inverse()
    e1 = spec.element([field.zero] + [r_inv] * spec.r)
    e2 = spec.element(
        [field.zero] + [-r_inv] * (spec.r - 1) + [field.element(spec.r - 1) * r_inv]
    )
    e3 = spec.one - spec.v_power(spec.r)
    basis = (e1, e2, e3)
    for i, e in enumerate(basis):
        if e.is_zero or not ring_is_idempotent(e):
            raise InvalidSpec(f"e{i + 1} = {e} is not a nonzero idempotent of {spec}")
        for j in range(i + 1, len(basis)):
            if not (e * basis[j]).is_zero:
                raise InvalidSpec(f"e{i + 1} * e{j + 1} != 0 in {spec}")
    if e1 + e2 + e3 != spec.one:
        raise InvalidSpec(f"e1 + e2 + e3 != 1 in {spec}")
    logger.debug(f"Idempotents of {spec}: {e1}, {e2}, {e3}")
    return basis


@dataclass(frozen=True)
class Triple:
    """Components (s, t, u) of e1*s + e2*t + e3*u."""

    s: FieldElement
    t: FieldElement
    u: FieldElement

    def __post_init__(self):
        if not self.s.spec == self.t.spec == self.u.spec:
            raise SpecMismatch("Triple components must share one field")

    @classmethod
    def of(cls, field: FieldSpec, s: Scalar, t: Scalar, u: Scalar) -> "Triple":
        return cls(*(field.element(c) if isinstance(c, int) else c for c in (s, t, u)))

    @property
    def field(self) -> FieldSpec:
        return self.s.spec

    def __iter__(self) -> Iterator[FieldElement]:
        return iter((self.s, self.t, self.u))

    def __add__(self, other: "Triple") -> "Triple":
        return Triple(self.s + other.s, self.t + other.t, self.u + other.u)

    def __neg__(self) -> "Triple":
        return Triple(-self.s, -self.t, -self.u)

    def __sub__(self, other: "Triple") -> "Triple":
        return self + (-other)

    def __mul__(self, other: Union["Triple", Scalar]) -> "Triple":
        if isinstance(other, Triple):
            return Triple(self.s * other.s, self.t * other.t, self.u * other.u)
        return Triple(self.s * other, self.t * other, self.u * other)

    @property
    def is_zero(self) -> bool:
        return self.s.is_zero and self.t.is_zero and self.u.is_zero

    def __str__(self):
        return f"({self.s}, {self.t}, {self.u})"


def triple_to_ring(t: Triple, spec: RingSpec) -> RingElement:
    if t.field != spec.field:
        raise SpecMismatch(f"Triple over {t.field} used with {spec}")
    e1, e2, e3 = idempotents(spec)
    return e1 * t.s + e2 * t.t + e3 * t.u


def ring_to_triple(x: RingElement) -> Triple:
    """Coordinates of x in the basis {e1, e2, e3}.

    Each coordinate is read off the projection x*e_i = c_i*e_i at a nonzero
    position of e_i; the reconstruction is then compared with x.

    Raises:
        NotInSubring: If x is not in the span of e1, e2, e3.
    """
    spec = x.spec
    components = []
    for e in idempotents(spec):
        projected = x * e
        pivot = next(i for i, c in enumerate(e.coeffs) if c)
        components.append(projected.coeffs[pivot] / e.coeffs[pivot])
    triple = Triple(*components)
    if triple_to_ring(triple, spec) != x:
        raise NotInSubring(f"{x} is not in the span of e1, e2, e3 in {spec}")
    return triple


def iter_ring(spec: RingSpec, limit: Optional[int] = None) -> Iterator[RingElement]:
    """Every element of R_r, lexicographic in the coefficient tuple."""
    check_limit(spec.size, f"the elements of {spec}", limit)
    elements = list(iter_field(spec.field))
    for coeffs in itertools.product(elements, repeat=spec.r + 1):
        yield RingElement(spec, coeffs)


def iter_subring(spec: RingSpec, limit: Optional[int] = None) -> Iterator[RingElement]:
    """Every element of R = e1*F + e2*F + e3*F, in triple order."""
    check_limit(spec.field.order**3, f"the elements of the subring of {spec}", limit)
    elements = list(iter_field(spec.field))
    for s, t, u in itertools.product(elements, repeat=3):
        yield triple_to_ring(Triple(s, t, u), spec)
