"""Tests for the ring R_r, its idempotents and the triple decomposition."""

import random

import pytest

from algebra.gf import FieldSpec
from algebra.ring_r import (
    RingSpec,
    Triple,
    idempotents,
    iter_ring,
    iter_subring,
    reduce_exponent,
    ring_is_idempotent,
    ring_to_triple,
    triple_to_ring,
)
from utils.common import InvalidSpec, LimitExceeded, NotInSubring, ParseError, SpecMismatch

RINGS = [(2, 1, 3), (3, 1, 2), (3, 1, 4), (5, 1, 2), (5, 1, 3), (2, 2, 3), (3, 2, 2), (7, 1, 5)]
FULL_RINGS = [
    (p, k, r) for p in (2, 3, 5, 7, 11) for k in (1, 2) for r in range(2, 7) if r % p != 0
]


def _random_ring_element(spec, rng):
    field = spec.field
    return spec.element(
        [field.element([rng.randrange(field.p) for _ in range(field.k)]) for _ in range(spec.r + 1)]
    )


def _random_triple(field, rng):
    return Triple(*(field.element([rng.randrange(field.p) for _ in range(field.k)]) for _ in range(3)))


class TestRingSpec:
    """Parameters and text of R_r."""

    def test_parse_and_print(self):
        """R(q; r) is canonical; spacing is free on input."""
        spec = RingSpec.parse("R(3;2)")
        assert spec == RingSpec.create(3, 1, 2)
        assert str(spec) == "R(3; 2)"
        assert str(RingSpec.create(3, 2, 2)) == "R(9; 2)"
        custom = RingSpec.parse("R(9; 2; x^2+2*x+2)")
        assert custom.field.modulus == (2, 2, 1)
        assert RingSpec.parse(str(custom)) == custom

    @pytest.mark.parametrize("text", ["R(3)", "GF(3; 2)", "R(3, 2)", ""])
    def test_parse_rejects(self, text):
        """Malformed ring texts are ParseErrors."""
        with pytest.raises(ParseError):
            RingSpec.parse(text)

    def test_invalid_parameters(self):
        """r must exceed 1 and be invertible modulo p."""
        with pytest.raises(InvalidSpec):
            RingSpec.create(3, 1, 1)
        with pytest.raises(InvalidSpec):
            RingSpec.create(3, 1, 3)
        with pytest.raises(InvalidSpec):
            RingSpec.create(2, 1, 4)

    def test_size(self):
        """|R_r| = p^{k(r+1)}."""
        assert RingSpec.create(3, 1, 2).size == 27
        assert RingSpec.create(2, 2, 3).size == 256
        assert RingSpec.create(5, 1, 3).size == 625


class TestRingElement:
    """Arithmetic with v^{r+1} = v."""

    def test_reduce_exponent(self):
        """Exponents above r wrap into 1 .. r."""
        assert [reduce_exponent(j, 2) for j in range(7)] == [0, 1, 2, 1, 2, 1, 2]
        assert [reduce_exponent(j, 3) for j in range(8)] == [0, 1, 2, 3, 1, 2, 3, 1]
        with pytest.raises(InvalidSpec):
            reduce_exponent(-1, 2)

    def test_v_relation(self):
        """v^{r+1} = v, and higher powers parse reduced."""
        spec = RingSpec.create(5, 1, 3)
        v = spec.v_power(1)
        assert v * spec.v_power(3) == v
        assert spec.parse_element("v^4") == v
        assert spec.parse_element("v^6 + 1") == spec.one + spec.v_power(3)

    def test_text(self):
        """Ascending powers of v; zero prints as 0."""
        spec = RingSpec.create(3, 1, 2)
        x = spec.parse_element("2*v^2 + 2*v")
        assert str(x) == "2*v+2*v^2"
        assert str(spec.zero) == "0"
        assert str(spec.one) == "1"
        wide = RingSpec.create(3, 2, 2)
        y = wide.parse_element("(a+1)*v + a")
        assert str(y) == "a+(a+1)*v"
        assert wide.parse_element(str(y)) == y

    def test_mixed_rings(self):
        """Elements of different rings do not combine."""
        with pytest.raises(SpecMismatch):
            RingSpec.create(3, 1, 2).one + RingSpec.create(3, 1, 4).one
        with pytest.raises(SpecMismatch):
            RingSpec.create(3, 1, 2).element([1, 2, 0, 1])

    @pytest.mark.parametrize("p,k,r", RINGS)
    def test_ring_axioms(self, p, k, r):
        """Commutative ring axioms on 1000 random triples."""
        spec = RingSpec.create(p, k, r)
        rng = random.Random(f"{p}:{k}:{r}")
        for _ in range(1000):
            a, b, c = (_random_ring_element(spec, rng) for _ in range(3))
            assert (a * b) * c == a * (b * c)
            assert a * (b + c) == a * b + a * c
            assert a * b == b * a
            assert a * spec.one == a
            assert a - a == spec.zero


class TestIdempotents:
    """The orthogonal idempotents e1, e2, e3."""

    @pytest.mark.parametrize(
        "text,expected",
        [
            ("R(3; 2)", ("2*v+2*v^2", "v+2*v^2", "1+2*v^2")),
            ("R(5; 2)", ("3*v+3*v^2", "2*v+3*v^2", "1+4*v^2")),
            ("R(5; 3)", ("2*v+2*v^2+2*v^3", "3*v+3*v^2+4*v^3", "1+4*v^3")),
            ("R(2; 3)", ("v+v^2+v^3", "v+v^2", "1+v^3")),
        ],
    )
    def test_known_values(self, text, expected):
        """Closed forms in small rings."""
        assert tuple(str(e) for e in idempotents(RingSpec.parse(text))) == expected

    @pytest.mark.parametrize("p,k,r", RINGS)
    def test_peirce_conditions(self, p, k, r):
        """Nonzero, idempotent, pairwise orthogonal, summing to 1."""
        spec = RingSpec.create(p, k, r)
        basis = idempotents(spec)
        for e in basis:
            assert not e.is_zero
            assert ring_is_idempotent(e)
        for i in range(3):
            for j in range(i + 1, 3):
                assert (basis[i] * basis[j]).is_zero
        assert basis[0] + basis[1] + basis[2] == spec.one

    def test_v_times_e1(self):
        """v*e1 = e1."""
        spec = RingSpec.create(5, 1, 4)
        e1 = idempotents(spec)[0]
        assert spec.v_power(1) * e1 == e1


class TestTriples:
    """The decomposition R = e1*F + e2*F + e3*F."""

    @pytest.mark.parametrize("p,k,r", RINGS)
    def test_componentwise_arithmetic(self, p, k, r):
        """Sums and products of triples map to sums and products in R_r."""
        spec = RingSpec.create(p, k, r)
        rng = random.Random(p * 100 + k * 10 + r)
        for _ in range(300):
            a = _random_triple(spec.field, rng)
            b = _random_triple(spec.field, rng)
            x, y = triple_to_ring(a, spec), triple_to_ring(b, spec)
            assert triple_to_ring(a + b, spec) == x + y
            assert triple_to_ring(a * b, spec) == x * y
            assert ring_to_triple(x) == a

    def test_idempotent_coordinates(self):
        """e_i has the unit vector as coordinates."""
        spec = RingSpec.create(3, 1, 2)
        field = spec.field
        e1, e2, e3 = idempotents(spec)
        assert ring_to_triple(e1) == Triple.of(field, 1, 0, 0)
        assert ring_to_triple(e2) == Triple.of(field, 0, 1, 0)
        assert ring_to_triple(e3) == Triple.of(field, 0, 0, 1)
        assert ring_to_triple(spec.one) == Triple.of(field, 1, 1, 1)

    def test_v_in_small_ring(self):
        """For r = 2 the subring is all of R_r; v = e1 + 2*e2 over F_3."""
        spec = RingSpec.create(3, 1, 2)
        assert ring_to_triple(spec.v_power(1)) == Triple.of(spec.field, 1, 2, 0)

    def test_not_in_subring(self):
        """For r > 2, v is outside the span of the idempotents."""
        with pytest.raises(NotInSubring):
            ring_to_triple(RingSpec.create(5, 1, 3).v_power(1))

    def test_triple_field_mismatch(self):
        """Triples carry their field."""
        with pytest.raises(SpecMismatch):
            Triple(FieldSpec.create(3).one, FieldSpec.create(5).one, FieldSpec.create(3).one)
        with pytest.raises(SpecMismatch):
            triple_to_ring(Triple.of(FieldSpec.create(5), 1, 1, 1), RingSpec.create(3, 1, 2))


class TestEnumeration:
    """Enumeration of R_r and of its subring."""

    def test_iter_ring(self):
        """Every element once."""
        spec = RingSpec.create(2, 1, 3)
        elements = list(iter_ring(spec))
        assert len(elements) == 16
        assert len(set(elements)) == 16
        assert elements[0] == spec.zero

    def test_iter_subring(self):
        """q^3 distinct elements, closed under multiplication."""
        spec = RingSpec.create(5, 1, 3)
        elements = list(iter_subring(spec))
        assert len(set(elements)) == 125
        members = set(elements)
        rng = random.Random(5)
        for _ in range(200):
            a, b = rng.choice(elements), rng.choice(elements)
            assert a * b in members

    def test_limits(self):
        """Enumeration refuses sizes beyond the limit."""
        spec = RingSpec.create(3, 1, 2)
        with pytest.raises(LimitExceeded):
            list(iter_ring(spec, limit=26))
        with pytest.raises(LimitExceeded):
            list(iter_subring(spec, limit=26))


@pytest.mark.slow
@pytest.mark.parametrize("p,k,r", FULL_RINGS)
def test_full_ring_grid(p, k, r):
    """Idempotents and the triple decomposition for every p <= 11, k <= 2 and 2 <= r <= 6."""
    spec = RingSpec.create(p, k, r)
    e1, e2, e3 = idempotents(spec)
    assert all(ring_is_idempotent(e) for e in (e1, e2, e3))
    assert (e1 * e2).is_zero and (e1 * e3).is_zero and (e2 * e3).is_zero
    assert e1 + e2 + e3 == spec.one
    assert spec.v_power(1) * e1 == e1
    rng = random.Random(f"full:{p}:{k}:{r}")
    for _ in range(100):
        a = _random_triple(spec.field, rng)
        b = _random_triple(spec.field, rng)
        x, y = triple_to_ring(a, spec), triple_to_ring(b, spec)
        assert triple_to_ring(a * b, spec) == x * y
        assert ring_to_triple(x + y) == a + b
