"""Wall-crossing differences, cascade extraction, and report objects."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gwfloor.fields import ClosedField, FiniteField, RealField, specialize_field
from gwfloor.univ import (
    UNIV_H,
    UNIV_ONE,
    UNIV_TWO,
    TildeElement,
    UnivElement,
    cascade_reconstruct,
)
from gwfloor.wallcross import (
    TransferCheck,
    default_field_sweep,
    delta_count,
    describe_assign,
    extract_universal_coefficient,
    pfister_element,
    proof_cascade_order,
    residual_report,
    unit_shift_pairs,
    wallcross_report,
)

tilde_elements = st.integers(1, 3).flatmap(
    lambda nvars: st.dictionaries(
        st.frozensets(st.integers(1, nvars), max_size=nvars),
        st.builds(
            UnivElement,
            st.integers(-4, 4),
            st.integers(-4, 4),
            st.integers(-4, 4),
        ),
        max_size=5,
    ).map(lambda cs: TildeElement(nvars, cs))
)


class TestPfister:
    def test_base(self):
        assert pfister_element(0) == TildeElement.constant(
            UNIV_ONE - UNIV_TWO, 0
        )

    def test_one_variable(self):
        assert pfister_element(1) == TildeElement(
            1,
            {
                frozenset(): UNIV_ONE - UNIV_TWO,
                frozenset({1}): UNIV_TWO - UNIV_ONE,
            },
        )

    def test_rank_zero_and_doubling(self):
        for s in range(0, 4):
            e = pfister_element(s)
            assert e.rank == 0
            doubled = e + e
            for model, assign in default_field_sweep(s):
                if isinstance(model, (FiniteField, ClosedField)):
                    assert specialize_field(doubled, model, assign) == (
                        model.zero()
                        if hasattr(model, "zero")
                        else specialize_field(
                            TildeElement.zero(s), model, assign
                        )
                    )


class TestCascade:
    def test_order(self):
        assert proof_cascade_order(1) == [1]
        assert proof_cascade_order(3) == [3, 1, 2]
        assert proof_cascade_order(5) == [5, 1, 2, 3, 4]

    def test_pure_product(self):
        prod = TildeElement.constant(UNIV_TWO, 2)
        for label in (1, 2):
            step = TildeElement.variable(label, 2) - TildeElement.constant(
                UNIV_ONE, 2
            )
            prod = prod * step
        full, witnesses = extract_universal_coefficient(prod)
        assert full == UNIV_TWO
        assert all(w == TildeElement.zero(2) for w in witnesses)

    def test_affine_step(self):
        e = TildeElement(
            1, {frozenset(): -1 * UNIV_H, frozenset({1}): UNIV_H}
        )
        full, witnesses = extract_universal_coefficient(e)
        assert full == UNIV_H
        assert witnesses == (TildeElement.zero(1),)

    @given(tilde_elements)
    @settings(max_examples=80)
    def test_full_coefficient_order_independent(self, e):
        import itertools

        base, _ = extract_universal_coefficient(e)
        for order in itertools.permutations(range(1, e.nvars + 1)):
            full, _ = extract_universal_coefficient(e, list(order))
            assert full == base

    @given(tilde_elements)
    @settings(max_examples=80)
    def test_reconstruction(self, e):
        order = proof_cascade_order(e.nvars)
        full, witnesses = extract_universal_coefficient(e)
        assert cascade_reconstruct(
            list(witnesses), full, order, e.nvars
        ) == e


class TestSweep:
    def test_sizes(self):
        assert len(default_field_sweep(0)) == 1 + 4 + 1
        assert len(default_field_sweep(1)) == 2 + 8 + 1
        assert len(default_field_sweep(2)) == 4 + 16 + 1

    def test_describe(self):
        assert describe_assign(RealField(), {1: 1, 2: -1}) == "+-"
        assert describe_assign(FiniteField(5), {1: 0, 2: 1}) == "sq/ns"
        assert describe_assign(ClosedField(), {1: 0}) == ""


class TestWallCrossReport:
    def test_unit_shift_passes(self):
        report = wallcross_report(3, (4,), (5,))
        assert report.passed
        assert report.n1 + report.n2 == 0
        assert report.n1 % 2 == 0
        assert report.rank_zero and report.broccoli and report.parity
        assert report.reconstruction and report.witnesses_zero
        assert all(fc.ok for fc in report.field_checks)

    def test_json_shape(self):
        doc = wallcross_report(2, (1,), (2,)).to_json()
        assert set(doc) == {
            "schema",
            "d",
            "s",
            "from",
            "to",
            "n1",
            "n2",
            "m",
            "checks",
            "passed",
        }
        assert doc["schema"] == "gwfloor/1"
        assert set(doc["checks"]) == {
            "rank_zero",
            "broccoli",
            "parity",
            "field_zero",
            "witnesses_zero",
            "reconstruction",
        }
        assert doc["passed"] is True

    def test_two_pair_shift(self):
        report = wallcross_report(3, (1, 3), (1, 4))
        assert report.s == 2
        assert report.passed

    def test_mismatched_configs_rejected(self):
        with pytest.raises(ValueError):
            delta_count(3, (4,), (1, 3))


class TestTransferCheck:
    def test_predicates(self):
        both = TransferCheck((1,), (2,), 0, 0)
        assert both.congruent and both.both_zero
        agree = TransferCheck((1,), (2,), 1, 1)
        assert agree.congruent and not agree.both_zero
        off = TransferCheck((1,), (2,), 1, 0)
        assert not off.congruent and not off.both_zero

    def test_json(self):
        doc = TransferCheck((1,), (2,), 0, 0).to_json()
        assert doc == {
            "target_from": [1],
            "target_to": [2],
            "lhs": 0,
            "rhs": 0,
            "congruent": True,
            "both_zero": True,
        }


class TestResidualReport:
    def test_single_pair_base(self):
        report = residual_report(3, (4,), (5,))
        assert report.s == 1
        assert report.base_zero is True
        assert report.transfers == ()
        assert report.passed

    def test_two_pair_transfers(self):
        report = residual_report(3, (1, 3), (1, 4))
        assert report.base_zero is None
        assert len(report.transfers) == len(unit_shift_pairs(8, 1))
        assert all(t.both_zero for t in report.transfers)
        assert report.passed

    def test_json_shape(self):
        doc = residual_report(2, (1,), (2,)).to_json()
        assert doc["schema"] == "gwfloor/1"
        assert {"residual", "top", "transfers"} <= set(doc)
        assert set(doc["top"]) == {"one", "eps"}


class TestUnitShiftPairs:
    def test_ordering_and_determinism(self):
        pairs = unit_shift_pairs(8, 1)
        assert pairs == unit_shift_pairs(8, 1)
        assert pairs == sorted(pairs)
        for a, b in pairs:
            assert a < b

    def test_membership(self):
        pairs = unit_shift_pairs(5, 2)
        assert ((1, 3), (1, 4)) in pairs
        assert ((1, 4), (2, 4)) in pairs
        assert all(len(a) == len(b) == 2 for a, b in pairs)
