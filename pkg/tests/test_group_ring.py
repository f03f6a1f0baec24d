"""Square-class group ring and its hyperbolic reduction."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gwfloor.group_ring import (
    GroupRingElement,
    HypUnivElement,
    SquareClassCarrier,
    hyp_univ_reduce,
)
from gwfloor.univ import UnivElement


@pytest.fixture
def carrier():
    return SquareClassCarrier((3, 5), ("d",))


class TestCarrier:
    def test_generator_order(self, carrier):
        assert carrier.generators == ("-1", "2", "3", "5", "d")
        assert carrier.bit("-1") == 1
        assert carrier.bit("2") == 2
        assert carrier.bit("d") == 16

    def test_class_of_int(self, carrier):
        assert carrier.class_of_int(1) == 0
        assert carrier.class_of_int(4) == 0
        assert carrier.class_of_int(-1) == 1
        assert carrier.class_of_int(2) == 2
        assert carrier.class_of_int(8) == 2
        assert carrier.class_of_int(-30) == 1 | 2 | 4 | 8
        assert carrier.class_of_int(45) == 8  # 45 = 9 * 5

    def test_class_of_int_missing_prime(self, carrier):
        with pytest.raises(ValueError):
            carrier.class_of_int(7)

    def test_monomial_name(self, carrier):
        assert carrier.monomial_name(0) == "<1>"
        assert carrier.monomial_name(3) == "<-1*2>"

    def test_duplicate_generators_rejected(self):
        with pytest.raises(ValueError):
            SquareClassCarrier((3,), ("3",))


class TestGroupRing:
    def test_xor_multiplication(self, carrier):
        a = GroupRingElement.symbol(carrier, carrier.class_of_int(2))
        b = GroupRingElement.symbol(carrier, carrier.class_of_int(-3))
        assert a * b == GroupRingElement.symbol(carrier, carrier.class_of_int(-6))
        assert a * a == GroupRingElement.symbol(carrier, 0)

    def test_carrier_mismatch(self, carrier):
        other = SquareClassCarrier((3,), ())
        with pytest.raises(ValueError):
            GroupRingElement.symbol(carrier, 0) + GroupRingElement.symbol(other, 0)


class TestHypUniv:
    def test_symbol_reduction(self, carrier):
        minus_one = HypUnivElement.of_int(carrier, -1)
        assert minus_one.hcoeff == 1
        assert minus_one.coeffs == {0: -1}

    def test_g_plus_minus_g_is_h(self, carrier):
        for n in (1, 2, 3, 5, 6, 10, 15):
            total = HypUnivElement.of_int(carrier, n) + HypUnivElement.of_int(carrier, -n)
            assert total == HypUnivElement.h(carrier)

    def test_h_absorbs(self, carrier):
        h = HypUnivElement.h(carrier)
        for n in (1, -1, 2, 3, -15):
            assert h * HypUnivElement.of_int(carrier, n) == h
        assert h * h == HypUnivElement.h(carrier, 2)

    def test_rank(self, carrier):
        assert HypUnivElement.of_int(carrier, 3).rank == 1
        assert HypUnivElement.of_int(carrier, -3).rank == 1
        assert HypUnivElement.h(carrier, 4).rank == 8

    def test_to_univ(self, carrier):
        e = (
            HypUnivElement.of_int(carrier, 1, 3)
            + HypUnivElement.of_int(carrier, 2, 5)
            + HypUnivElement.h(carrier, 2)
        )
        assert e.to_univ() == UnivElement(3, 2, 5)

    def test_to_univ_rejects_other_support(self, carrier):
        with pytest.raises(ValueError, match="support outside the universal span"):
            HypUnivElement.of_int(carrier, 3).to_univ()

    def test_reduce_matches_direct(self, carrier):
        raw = GroupRingElement.symbol(carrier, carrier.class_of_int(-6), 4)
        assert hyp_univ_reduce(raw) == HypUnivElement.of_int(carrier, -6, 4)

    @given(st.data())
    @settings(max_examples=60)
    def test_reduction_is_ring_map(self, data):
        carrier = SquareClassCarrier((3,), ())
        masks = st.integers(0, (1 << carrier.size) - 1)
        coeffs = st.integers(-4, 4)
        elems = st.dictionaries(masks, coeffs, max_size=4).map(
            lambda d: GroupRingElement(carrier, d)
        )
        a = data.draw(elems)
        b = data.draw(elems)
        assert hyp_univ_reduce(a * b) == hyp_univ_reduce(a) * hyp_univ_reduce(b)
        assert hyp_univ_reduce(a + b) == hyp_univ_reduce(a) + hyp_univ_reduce(b)
