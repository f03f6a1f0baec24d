"""Acceptance gate: ten criteria, one PASS/FAIL line each.

Each test prints ``ACCEPTANCE <n>: PASS|FAIL - <summary>`` so the run log
shows the verdict per criterion even under ``-q``; the assert that follows
carries the first failure detail.
"""

import itertools
import time

import pytest

from gwfloor import local_factors as lf
from gwfloor.diagrams import (
    dissolve_specialize,
    dissolved_config,
    enumerate_merge_configs,
    floor_count,
    graph_connected,
    kontsevich_nd,
    unit_shift_graph,
)
from gwfloor.fields import FiniteField, FqClass, RealField, specialize_field
from gwfloor.springer import (
    DiagonalForm,
    Verdict,
    is_anisotropic,
    negate,
    pfister_concrete,
    springer_split,
)
from gwfloor.univ import (
    UNIV_H,
    UNIV_MINUS_ONE,
    UNIV_MINUS_TWO,
    UNIV_ONE,
    UNIV_TWO,
    TildeElement,
    residual_reduce,
)
from gwfloor.wallcross import (
    pfister_element,
    residual_report,
    unit_shift_pairs,
    wallcross_report,
)


VERDICT_LINES: list[str] = []


def _verdict(n: int, failures: list, summary: str):
    status = "PASS" if not failures else "FAIL"
    line = f"ACCEPTANCE {n}: {status} - {summary}"
    VERDICT_LINES.append(line)
    print(line)
    assert not failures, f"criterion {n}: {failures[:5]}"


def _fq_assignments(s: int):
    for bits in itertools.product((0, 1), repeat=s):
        yield dict(zip(range(1, s + 1), bits))


def test_criterion_01_identity_suite():
    failures = []
    t0 = time.perf_counter()
    for m in range(1, 61):
        carrier = lf.carrier_for(m, ("d",))
        plain = lf.carrier_for(m)
        if (
            lf.gamma_hat_raw(m, carrier, "d") * lf.m_a1_raw(m, carrier)
            != lf.type_a_closed_raw(m, carrier, "d")
        ):
            failures.append(("type_a_product", m))
        if lf.gamma_hat_raw(m, plain, None) != lf.m_a1_raw(m, plain):
            failures.append(("square_field", m))
        square = lf.m_a1_raw(m, plain) * lf.m_a1_raw(m, plain)
        if square != lf.elevator_square_closed_raw(m, plain):
            failures.append(("elevator_square", m))
        if square.to_univ() != lf.elevator_square(m):
            failures.append(("elevator_square_univ", m))
        product = lf.gamma_hat_raw(m, plain, None) * lf.m_a1_raw(m, plain)
        if product.to_univ() != lf.elevator_square(m):
            failures.append(("universal_square_product", m))
    elapsed = time.perf_counter() - t0
    if elapsed >= 1.0:
        failures.append(("runtime", elapsed))
    _verdict(1, failures, f"identity families m<=60 in {elapsed:.2f}s")


def test_criterion_02_gw_laws():
    failures = []
    t0 = time.perf_counter()
    for q in (5, 7, 11, 13, 17):
        model = FiniteField(q)
        h = model.from_univ(UNIV_H)
        one = model.from_univ(UNIV_ONE)
        two = model.from_univ(UNIV_TWO)
        zero = model.zero()
        classes = [FqClass(1, 0), FqClass(1, 1)]
        for a in classes:
            if h * a != h:
                failures.append((q, "h_absorbs", a))
            if a - two * a + (a - two * a) != zero:
                failures.append((q, "two_torsion", a))
        if h * h != h + h:
            failures.append((q, "h_square"))
        for d in classes:
            if h * (d - one) != zero:
                failures.append((q, "h_kills_differences", d))
    for s in range(0, 4):
        doubled = pfister_element(s) + pfister_element(s)
        for q in (5, 7, 11, 13, 17):
            model = FiniteField(q)
            for assign in _fq_assignments(s):
                if specialize_field(doubled, model, assign) != model.zero():
                    failures.append((q, "pfister", s, tuple(assign.values())))
    elapsed = time.perf_counter() - t0
    if elapsed >= 1.0:
        failures.append(("runtime", elapsed))
    _verdict(2, failures, f"field laws and Pfister torsion in {elapsed:.2f}s")


def test_criterion_03_rank_oracle():
    failures = []
    for d in (1, 2, 3):
        n = 3 * d - 1
        expect = kontsevich_nd(d)
        for s in range(0, n // 2 + 1):
            for cfg in enumerate_merge_configs(n, s):
                got = floor_count(d, cfg).rank
                if got != expect:
                    failures.append((d, cfg, got))
    for s in (0, 1, 2):
        for cfg in enumerate_merge_configs(11, s):
            got = floor_count(4, cfg).rank
            if got != 620:
                failures.append((4, cfg, got))
    _verdict(3, failures, "rank matches the recursion for d<=3 (all s) and d=4 (s<=2)")


def test_criterion_04_signature_invariance():
    failures = []
    base = floor_count(3)
    if base != TildeElement.constant(8 * UNIV_ONE + 2 * UNIV_H, 0):
        failures.append(("base_value", base))
    if base.rank != 12:
        failures.append(("base_rank", base.rank))
    model = RealField()
    for s in range(0, 5):
        sigs = set()
        for cfg in enumerate_merge_configs(8, s):
            assign = {j: -1 for j in range(1, s + 1)}
            sigs.add(specialize_field(floor_count(3, cfg), model, assign).sig)
        if len(sigs) != 1:
            failures.append(("not_constant", s, sigs))
        if s == 0 and sigs != {8}:
            failures.append(("base_signature", sigs))
    _verdict(4, failures, "degree-3 count is 8<1>+2h; all-negative signature is merge-position independent")


def test_criterion_05_anchor_values():
    failures = []
    anchor_a = lf.type_a_factor(3, 1, 1)
    if anchor_a != TildeElement(
        1,
        {
            frozenset(): UNIV_ONE + UNIV_TWO + 3 * UNIV_H,
            frozenset({1}): UNIV_MINUS_TWO,
        },
    ):
        failures.append("type_a_m3")
    t1 = lf.twin_tree_factor(lf.TwinTreeDescriptor(t=1, m_circ=0, labels=(1,)), 1)
    if t1 != TildeElement.constant(UNIV_ONE, 1):
        failures.append("twin_t1")
    t2 = lf.twin_tree_factor(lf.TwinTreeDescriptor(t=2, m_circ=1, labels=(1, 2)), 2)
    if t2 != TildeElement(
        2, {frozenset({1}): UNIV_TWO, frozenset({2}): UNIV_TWO}
    ):
        failures.append("twin_t2")
    desc3 = lf.TwinTreeDescriptor(
        t=7, m_circ=3, labels=tuple(range(1, 8)), bounded_edges=((2, 1),)
    )
    edge = TildeElement(
        7,
        {
            frozenset(): 2 * UNIV_ONE + 6 * UNIV_H,
            frozenset({1}): 2 * UNIV_MINUS_ONE,
        },
    )
    parity_sum = TildeElement(
        7,
        {
            frozenset(subset): UNIV_ONE
            for size in (1, 3, 5, 7)
            for subset in itertools.combinations(range(1, 8), size)
        },
    )
    if lf.twin_tree_factor(desc3, 7) != edge * parity_sum:
        failures.append("twin_t3")
    twin4 = lf.twin_tree_factor(
        lf.TwinTreeDescriptor(t=2, m_circ=1, labels=(1, 2)), 4
    )
    product = twin4 * lf.type_r_factor(4, 4)
    if product != TildeElement(
        4, {frozenset(ls): UNIV_ONE for ls in [{1}, {2}, {1, 4}, {2, 4}]}
    ):
        failures.append("crossing_product")
    _verdict(5, failures, "printed example values reproduced exactly")


def test_criterion_06_dissolution():
    failures = []
    for d in (1, 2, 3):
        n = 3 * d - 1
        for s in range(1, n // 2 + 1):
            for cfg in enumerate_merge_configs(n, s):
                full = floor_count(d, cfg)
                for j in range(1, s + 1):
                    left = dissolve_specialize(full, j)
                    right = floor_count(d, dissolved_config(cfg, j))
                    for q in (5, 7, 11):
                        model = FiniteField(q)
                        for assign in _fq_assignments(s - 1):
                            lv = specialize_field(left, model, assign)
                            rv = specialize_field(right, model, assign)
                            if lv != rv:
                                failures.append((d, cfg, j, q, assign))
    _verdict(6, failures, "specialised double points match split simple points in every finite field")


def test_criterion_07_unit_shift_sweep():
    failures = []
    for d in (2, 3):
        n = 3 * d - 1
        for s in range(1, n // 2 + 1):
            for cfg_from, cfg_to in unit_shift_pairs(n, s):
                report = wallcross_report(d, cfg_from, cfg_to)
                if not report.passed:
                    failures.append((d, cfg_from, cfg_to))
                    continue
                if report.n1 + report.n2 != 0 or report.n1 % 2:
                    failures.append((d, cfg_from, cfg_to, "counts"))
    _verdict(7, failures, "every unit shift at d in {2,3} vanishes in rank, signature, and all field images")


def test_criterion_08_residual_suite():
    failures = []
    for m in range(1, 41):
        kinds = [
            lf.ElevatorSquare(m),
            lf.TypeA(m, 1),
            lf.TypeR(1),
            lf.TwinEdge(m, 1),
            lf.UnitEnd(),
        ]
        for f in kinds:
            if lf.residual_factor(f, 2) != residual_reduce(f.evaluate(2)):
                failures.append(("table", type(f).__name__, m))
    for d in (1, 2, 3):
        n = 3 * d - 1
        if n < 2:
            continue
        for cfg_from, cfg_to in unit_shift_pairs(n, 1):
            report = residual_report(d, cfg_from, cfg_to)
            if report.base_zero is not True:
                failures.append(("base", d, cfg_from, cfg_to))
    for s in range(2, 5):
        for cfg_from, cfg_to in unit_shift_pairs(8, s):
            report = residual_report(3, cfg_from, cfg_to)
            if not all(t.both_zero for t in report.transfers):
                failures.append(("transfer", s, cfg_from, cfg_to))
    _verdict(8, failures, "residual table, one-pair base case, and transfer congruence all vanish")


def test_criterion_09_springer_suite():
    failures = []
    t0 = time.perf_counter()
    for s in range(1, 9):
        if is_anisotropic(pfister_concrete(s)) is not Verdict.ANISOTROPIC:
            failures.append(("pfister", s))
    if is_anisotropic(DiagonalForm(0, ((1, 0), (-1, 0)))) is not Verdict.ISOTROPIC:
        failures.append("hyperbolic")
    if is_anisotropic(DiagonalForm(0, ((1, 0), (-2, 0)))) is not Verdict.ANISOTROPIC:
        failures.append("binary")
    for s in range(1, 9):
        unit, uniformizer = springer_split(pfister_concrete(s), s)
        prev = pfister_concrete(s - 1)
        if unit.restrict_variables(s - 1) != prev:
            failures.append(("residue_unit", s))
        if uniformizer.restrict_variables(s - 1) != negate(prev):
            failures.append(("residue_uniformizer", s))
    elapsed = time.perf_counter() - t0
    if elapsed >= 1.0:
        failures.append(("runtime", elapsed))
    _verdict(9, failures, f"tower anisotropy certificates in {elapsed:.2f}s")


def test_criterion_10_graph_connectivity():
    failures = []
    for n in range(2, 13):
        for s in range(0, n // 2 + 1):
            cfgs = enumerate_merge_configs(n, s)
            if not graph_connected(unit_shift_graph(cfgs, n)):
                failures.append((n, s))
    _verdict(10, failures, "merge-position graph connected for every n <= 12")
