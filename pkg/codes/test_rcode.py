"""Tests for codes over R assembled from three cyclic codes."""

import math

import pytest

from algebra.gf import FieldSpec
from algebra.polyring import Poly, QuotientElement
from algebra.ring_r import RingSpec, Triple, ring_to_triple
from codes import rcode
from codes.cyclic import CyclicCode
from codes.rcode import (
    GrayImage,
    RCode,
    RCodeword,
    RingPolynomial,
    block_shift,
    build,
    combined_idempotent_check,
    deinterleave,
    gray_map,
    gray_map_code,
    interleave,
)
from utils.common import MixedParameters, NotIdempotentComponents

RING = RingSpec.create(3, 1, 2)
F3 = RING.field


def _code(text, n=2, spec=F3):
    return CyclicCode.from_generator(Poly.parse(spec, text), n)


@pytest.fixture
def example():
    """R(3; 2), n = 2, generators (x+1, x+2, 1)."""
    return build(RING, _code("x+1"), _code("x+2"), _code("1"))


class TestRCode:
    """Size, printing and membership."""

    def test_cardinality(self, example):
        """|C| = |C1||C2||C3| = 3 * 3 * 9."""
        assert example.cardinality == 81
        assert len(set(example.enumerate_codewords())) == 81
        big = build(RingSpec.create(2, 2, 3), *(_code(t, 3, FieldSpec.create(2, 2)) for t in ("x+1", "1", "1")))
        assert big.cardinality == 4**8

    def test_text(self, example):
        """RCode{ring=..., n=..., g1=..., g2=..., g3=...}."""
        assert str(example) == "RCode{ring=R(3; 2), n=2, g1=x+1, g2=x+2, g3=1}"

    def test_shift_closed(self, example):
        """Every component is cyclic, so C is closed under the coordinate shift."""
        words = set(example.enumerate_codewords())
        assert all(w.shift() in words for w in words)
        assert all(example.contains(w) for w in words)

    def test_linear_over_r(self, example):
        """C is closed under multiplication by ring scalars, coordinatewise."""
        words = set(example.enumerate_codewords())
        scalar = RING.parse_element("v")
        for w in list(words)[:20]:
            scaled = RCodeword.from_ring_elements(RING, [scalar * x for x in w.to_ring_elements()])
            assert scaled in words

    def test_mixed_components(self):
        """Components must share the field and length of the ring."""
        with pytest.raises(MixedParameters):
            RCode(RING, _code("x+1"), _code("x+1", 4), _code("1"))
        with pytest.raises(MixedParameters):
            RCode(RING, _code("x+1", 2, FieldSpec.create(5)), _code("x+1"), _code("1"))


class TestGrayMap:
    """phi(C) = C1 (x) C2 (x) C3."""

    def test_gray_image(self, example):
        """Length 3n, same cardinality, printed as a product."""
        image = gray_map_code(example)
        assert isinstance(image, GrayImage)
        assert image.length == 6
        assert image.cardinality == 81
        assert str(image) == (
            "CyclicCode{field=GF(3), n=2, g=x+1} (x) "
            "CyclicCode{field=GF(3), n=2, g=x+2} (x) "
            "CyclicCode{field=GF(3), n=2, g=1}"
        )

    def test_gray_map_is_bijective(self, example):
        """Distinct codewords have distinct images of length 3n."""
        images = {gray_map(w) for w in example.enumerate_codewords()}
        assert len(images) == 81
        assert all(len(v) == 6 for v in images)

    def test_block_layout(self):
        """phi(w) = (s | t | u); interleaving reorders to (s_i, t_i, u_i)."""
        one, two, zero = F3.one, F3.element(2), F3.zero
        w = RCodeword.from_components(RING, [one, two], [zero, one], [two, two])
        assert gray_map(w) == (one, two, zero, one, two, two)
        assert interleave(gray_map(w), 2) == (one, zero, two, two, one, two)
        assert deinterleave(interleave(gray_map(w), 2), 2) == gray_map(w)
        assert block_shift(gray_map(w), 2) == (two, one, one, zero, two, two)
        with pytest.raises(MixedParameters):
            interleave((one,) * 5, 2)

    def test_quasi_cyclic(self, example):
        """phi(C) is invariant under the block shift."""
        assert rcode.is_quasi_cyclic_order3(example)

    def test_weights(self, example):
        """e3*(1, 0) has weight 1 over R and over F."""
        assert rcode.min_weight(example) == 1
        assert rcode.gray_min_weight(example) == 1
        repetition = build(RING, *(_code("x+1") for _ in range(3)))
        assert rcode.min_weight(repetition) == 2
        assert rcode.gray_min_weight(repetition) == 2
        zero = build(RING, *(CyclicCode.zero(F3, 2) for _ in range(3)))
        assert rcode.min_weight(zero) == math.inf
        assert rcode.gray_min_weight(zero) == math.inf


class TestGenerators:
    """Generators and idempotents over R."""

    def test_single_generator(self, example):
        """e1*g1 + e2*g2 + e3*g3 written coefficientwise in v."""
        g = rcode.single_generator(example)
        assert str(g) == "v^2*x+1+v+2*v^2"
        expanded = rcode.generators_over_r(example)
        assert g == expanded[0] + expanded[1] + expanded[2]

    def test_single_generator_equal_components(self):
        """With g1 = g2 = g3 = g the generator is g itself."""
        code = build(RING, *(_code("x+1") for _ in range(3)))
        assert rcode.single_generator(code) == RingPolynomial.from_field_poly(
            RING, Poly.parse(F3, "x+1")
        )

    def test_single_generator_generates(self, example):
        """The multiples a*g of the single generator, a in R^n components, stay in C."""
        g = rcode.single_generator(example)
        words = set(example.enumerate_codewords())
        for s in RING.field.one, RING.field.element(2):
            for position in range(2):
                for e in (RING.one, RING.v_power(1), RING.v_power(2)):
                    coeffs = [RING.zero] * 2
                    coeffs[position] = e * s
                    product = RingPolynomial(RING, tuple(coeffs)).mul_mod(g, 2)
                    assert RCodeword.from_ring_elements(RING, product.to_vector(2)) in words

    def test_components(self, example):
        """Single generator components are the component generators."""
        g = rcode.single_generator(example)
        assert g.components() == tuple(c.generator for c in example.components)

    def test_idempotent_over_r(self, example):
        """e1*f1 + e2*f2 + e3*f3 is idempotent and fixes every generator."""
        e = rcode.idempotent_over_r(example)
        assert e.is_idempotent(2)
        for generator in rcode.generators_over_r(example):
            assert e.mul_mod(generator, 2) == generator.reduce_mod(2)
        f1, f2, f3 = e.components()
        assert str(f1) == "2*x+2"
        assert str(f2) == "x+2"
        assert str(f3) == "1"

    def test_combined_idempotent_check(self, example):
        """The combination is idempotent exactly when every part is."""
        parts = [c.generating_idempotent for c in example.components]
        assert combined_idempotent_check(RING, parts) == (True, True)
        broken = [parts[0], QuotientElement(2, Poly.parse(F3, "x")), parts[2]]
        assert combined_idempotent_check(RING, broken) == (False, False)

    def test_text_parses_back(self, example):
        """Printed generators and idempotents parse back to the same polynomial."""
        nine = RingSpec.create(3, 2, 2)
        f9 = nine.field
        other = build(nine, _code("x+1", spec=f9), _code("x+2", spec=f9), _code("1", spec=f9))
        for ring, code in ((RING, example), (nine, other)):
            for poly in (
                rcode.single_generator(code),
                rcode.idempotent_over_r(code),
                rcode.dual_idempotent(code),
            ):
                assert RingPolynomial.parse(ring, str(poly)) == poly

    def test_parse_reduces_powers_of_v(self):
        """v^(r+1) = v and unordered terms are accepted."""
        assert RingPolynomial.parse(RING, "1 + v^3*x") == RingPolynomial.parse(RING, "v*x+1")
        assert str(RingPolynomial.parse(RING, "2*v^2 + v + 1 + v^2*x")) == "v^2*x+1+v+2*v^2"
        assert RingPolynomial.parse(RING, "x - x").is_zero


class TestDuality:
    """C^perp componentwise."""

    def test_dual(self, example):
        """Components dualize individually; |C^perp| = 9."""
        other = rcode.dual(example)
        assert [str(c.generator) for c in other.components] == ["x+2", "x+1", "x^2+2"]
        assert other.cardinality == 9
        assert rcode.dual(other) == example

    def test_dual_is_orthogonal(self, example):
        """Every pair of codewords from C and C^perp has zero inner product."""
        zero = Triple.of(F3, 0, 0, 0)
        for u in example.enumerate_codewords():
            for w in rcode.dual(example).enumerate_codewords():
                assert u.inner_product(w) == zero

    def test_dual_idempotent(self, example):
        """1 - e(x^{-1}) generates the dual."""
        e = rcode.dual_idempotent(example)
        assert e == rcode.idempotent_over_r(rcode.dual(example))
        parts = [c.generating_idempotent for c in example.components]
        assert rcode.dual_idempotent(example, parts) == e

    @pytest.mark.parametrize(
        "parts",
        [
            ["x+2", "2*x+2", "1"],
            ["2*x+2", "x", "1"],
            ["2*x+2", "x+2"],
        ],
    )
    def test_dual_idempotent_rejects(self, example, parts):
        """Wrong, non-idempotent or missing component idempotents."""
        supplied = [QuotientElement(2, Poly.parse(F3, text)) for text in parts]
        with pytest.raises(NotIdempotentComponents):
            rcode.dual_idempotent(example, supplied)

    def test_no_self_dual(self, example):
        """The example is neither self-dual nor self-orthogonal."""
        assert not rcode.is_self_dual(example)
        assert not rcode.is_self_orthogonal(example)

    def test_self_orthogonal_components(self):
        """Simplex components give a self-orthogonal code over R(2; 3)."""
        ring = RingSpec.create(2, 1, 3)
        simplex = CyclicCode.from_generator(Poly.parse(ring.field, "x^4+x^3+x^2+1"), 7)
        code = build(ring, simplex, simplex, simplex)
        assert rcode.is_self_orthogonal(code)
        assert not rcode.is_self_dual(code)


def test_codeword_round_trip(example):
    """Ring elements and triples describe the same codeword."""
    for w in example.enumerate_codewords()[:10]:
        elements = w.to_ring_elements()
        assert RCodeword.from_ring_elements(RING, elements) == w
        assert tuple(ring_to_triple(x) for x in elements) == w.triples
