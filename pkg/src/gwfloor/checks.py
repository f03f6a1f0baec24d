"""Verification suites backing the ``verify`` command.

Each suite bundles related checks into individually named verdicts:

- ``identities``: closed-form product identities in the group-ring
  carrier for weights 1..60, plus the finite-field ring laws and the
  2-torsion of the Pfister element.
- ``counts``: the rank oracle against the classical recursion, the
  degree-3 anchor value, signature invariance across merge positions,
  and the worked local-factor anchor values.
- ``dissolution``: field-level agreement of parameter specialisation
  with the counts at the dissolved configuration.
- ``wallcross``: full vanishing reports for every unit shift, plus
  connectivity of the merge-configuration graph.
- ``residual``: the mod-2 factor table computed along two independent
  pipelines, the one-pair base case, and the transfer congruence.
- ``springer``: anisotropy certificates over the Laurent tower.
- ``all``: everything above, in that order.

Checks never abort a sweep: a crash inside one check is reported as a
failing verdict.  Results carry wall-clock times for interactive use
but serialise without them so repeated runs are byte-identical.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from multiprocessing import get_context
from time import perf_counter

from . import local_factors as lf
from .diagrams import (
    dissolve_specialize,
    dissolved_config,
    enumerate_merge_configs,
    floor_count,
    graph_connected,
    kontsevich_nd,
    unit_shift_graph,
)
from .fields import FiniteField, FqClass, RealField, specialize_field
from .springer import (
    DiagonalForm,
    Verdict,
    is_anisotropic,
    negate,
    pfister_concrete,
    springer_split,
)
from .univ import (
    UNIV_H,
    UNIV_MINUS_ONE,
    UNIV_ONE,
    UNIV_TWO,
    TildeElement,
    UnivElement,
    residual_reduce,
)
from .wallcross import (
    SCHEMA_VERSION,
    pfister_element,
    residual_report,
    unit_shift_pairs,
    wallcross_report,
)

SUITE_NAMES = (
    "identities",
    "counts",
    "dissolution",
    "wallcross",
    "residual",
    "springer",
    "all",
)

GW_LAW_ORDERS = (5, 7, 11, 13, 17)
DISSOLUTION_ORDERS = (5, 7, 11)
MAX_IDENTITY_WEIGHT = 60
MAX_RESIDUAL_WEIGHT = 40
MAX_GRAPH_POINTS = 12


# ---------------------------------------------------------------------------
# Results
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class CheckResult:
    check_id: str
    passed: bool
    detail: str = ""
    elapsed: float = 0.0

    def to_json(self) -> dict:
        # Elapsed time is deliberately left out: suite output must be
        # byte-identical across runs.
        return {"id": self.check_id, "ok": self.passed, "detail": self.detail}


@dataclass(frozen=True, slots=True)
class SuiteResult:
    suite: str
    checks: tuple[CheckResult, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def elapsed(self) -> float:
        return sum(c.elapsed for c in self.checks)

    def failures(self) -> tuple[CheckResult, ...]:
        return tuple(c for c in self.checks if not c.passed)

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "suite": self.suite,
            "passed": self.passed,
            "checks": [c.to_json() for c in self.checks],
        }


def _assignments(s: int, values: tuple[int, ...]):
    for pattern in itertools.product(values, repeat=s):
        yield dict(zip(range(1, s + 1), pattern))


# ---------------------------------------------------------------------------
# Identity checks
# ---------------------------------------------------------------------------


def _check_type_a_product(m: int):
    carrier = lf.carrier_for(m, ("d",))
    lhs = lf.gamma_hat_raw(m, carrier, "d") * lf.m_a1_raw(m, carrier)
    rhs = lf.type_a_closed_raw(m, carrier, "d")
    return lhs == rhs, ""


def _check_square_field(m: int):
    carrier = lf.carrier_for(m)
    return lf.gamma_hat_raw(m, carrier, None) == lf.m_a1_raw(m, carrier), ""


def _check_elevator_square(m: int):
    carrier = lf.carrier_for(m)
    square = lf.m_a1_raw(m, carrier) * lf.m_a1_raw(m, carrier)
    ok = (
        square == lf.elevator_square_closed_raw(m, carrier)
        and square.to_univ() == lf.elevator_square(m)
    )
    return ok, ""


def _check_universal_square_product(m: int):
    carrier = lf.carrier_for(m)
    product = lf.gamma_hat_raw(m, carrier, None) * lf.m_a1_raw(m, carrier)
    return product.to_univ() == lf.elevator_square(m), ""


def _check_gw_laws(q: int):
    model = FiniteField(q)
    h = model.from_univ(UNIV_H)
    one = model.one()
    two = model.from_univ(UNIV_TWO)
    zero = model.zero()
    if h * h != h + h:
        return False, "h*h != 2h"
    for bit in (0, 1):
        a = FqClass(1, bit)
        if h * a != h:
            return False, f"h<a> != h for square bit {bit}"
        if h * (a - one) != zero:
            return False, f"h(<d>-<1>) != 0 for square bit {bit}"
        torsion = (a - two * a) + (a - two * a)
        if torsion != zero:
            return False, f"2(<a>-<2a>) != 0 for square bit {bit}"
    return True, ""


def _check_pfister_torsion(q: int, s: int):
    model = FiniteField(q)
    element = pfister_element(s)
    doubled = element + element
    for assign in _assignments(s, (0, 1)):
        if not specialize_field(doubled, model, assign).is_zero():
            return False, f"nonzero at {assign}"
    return True, ""


# ---------------------------------------------------------------------------
# Count checks
# ---------------------------------------------------------------------------


def _check_rank_oracle(d: int, s: int):
    n = 3 * d - 1
    expected = kontsevich_nd(d)
    configs = enumerate_merge_configs(n, s)
    for cfg in configs:
        r = floor_count(d, cfg).rank
        if r != expected:
            return False, f"cfg {cfg}: rank {r} != {expected}"
    return True, f"{len(configs)} configurations at rank {expected}"


def _check_count_anchor():
    c = floor_count(3, ())
    expected = TildeElement.constant(UnivElement(8, 2, 0), 0)
    sig = specialize_field(c, RealField(), {}).sig
    ok = c == expected and c.rank == 12 and sig == 8
    return ok, f"value {c}, signature {sig}"


def _all_negative_signature(d: int, cfg: tuple[int, ...]) -> int:
    count = floor_count(d, cfg)
    assign = {l: -1 for l in range(1, len(cfg) + 1)}
    return specialize_field(count, RealField(), assign).sig


def _check_signature_invariance(d: int, s: int):
    n = 3 * d - 1
    sigs = {
        cfg: _all_negative_signature(d, cfg)
        for cfg in enumerate_merge_configs(n, s)
    }
    values = sorted(set(sigs.values()))
    if len(values) != 1:
        return False, f"signatures differ across configurations: {values}"
    if s == 0 and d == 3 and values[0] != 8:
        return False, f"expected signature 8, got {values[0]}"
    return True, f"common signature {values[0]}"


def _check_anchor_type_a_m3():
    got = lf.type_a_factor(3, 1, 1)
    expected = TildeElement(
        1,
        {
            frozenset(): UNIV_ONE + UNIV_TWO + 3 * UNIV_H,
            frozenset({1}): UNIV_H - UNIV_TWO,
        },
    )
    return got == expected, f"value {got}"


def _check_anchor_twin_t1():
    desc = lf.TwinTreeDescriptor(t=1, m_circ=2, labels=(1,), bounded_edges=())
    got = lf.twin_tree_factor(desc, 1)
    return got == TildeElement.constant(UNIV_ONE, 1), f"value {got}"


def _check_anchor_twin_t2():
    desc = lf.TwinTreeDescriptor(t=2, m_circ=1, labels=(1, 2), bounded_edges=((1, 1),))
    got = lf.twin_tree_factor(desc, 2)
    expected = TildeElement(
        2, {frozenset({1}): UNIV_TWO, frozenset({2}): UNIV_TWO}
    )
    return got == expected, f"value {got}"


def _check_anchor_twin_t3():
    desc = lf.TwinTreeDescriptor(
        t=7, m_circ=3, labels=tuple(range(1, 8)), bounded_edges=((2, 1),)
    )
    got = lf.twin_tree_factor(desc, 7)
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
    return got == edge * parity_sum, ""


def _check_anchor_crossing_product():
    twin = lf.twin_tree_factor(
        lf.TwinTreeDescriptor(t=2, m_circ=1, labels=(1, 2), bounded_edges=((1, 1),)),
        4,
    )
    got = twin * lf.type_r_factor(4, 4)
    expected = TildeElement(
        4,
        {
            frozenset({1}): UNIV_ONE,
            frozenset({2}): UNIV_ONE,
            frozenset({1, 4}): UNIV_ONE,
            frozenset({2, 4}): UNIV_ONE,
        },
    )
    return got == expected, f"value {got}"


# ---------------------------------------------------------------------------
# Dissolution checks
# ---------------------------------------------------------------------------


def _check_dissolution(d: int, cfg: tuple[int, ...], j: int):
    cfg = tuple(cfg)
    s = len(cfg)
    lhs = dissolve_specialize(floor_count(d, cfg), j)
    rhs = floor_count(d, dissolved_config(cfg, j))
    for q in DISSOLUTION_ORDERS:
        model = FiniteField(q)
        for assign in _assignments(s - 1, (0, 1)):
            if specialize_field(lhs, model, assign) != specialize_field(
                rhs, model, assign
            ):
                return False, f"q={q}, assignment {assign}"
    return True, ""


# ---------------------------------------------------------------------------
# Wall-crossing checks
# ---------------------------------------------------------------------------


def _check_wallcross_level(d: int, s: int):
    n = 3 * d - 1
    pairs = unit_shift_pairs(n, s)
    for cfg_from, cfg_to in pairs:
        report = wallcross_report(d, cfg_from, cfg_to)
        if not report.passed:
            failed = [
                key
                for key, val in report.to_json()["checks"].items()
                if val is False
            ]
            return False, f"{cfg_from} -> {cfg_to}: failed {failed}"
    return True, f"{len(pairs)} unit shifts"


def _check_graph_connected(n: int, s: int):
    configs = enumerate_merge_configs(n, s)
    graph = unit_shift_graph(configs, n)
    return graph_connected(graph), f"{len(configs)} configurations"


# ---------------------------------------------------------------------------
# Residual checks
# ---------------------------------------------------------------------------


def _check_residual_factors(m: int):
    factors = [
        lf.ElevatorSquare(m),
        lf.TypeA(m, 1),
        lf.TypeR(1),
        lf.TwinEdge(m, 1),
        lf.UnitEnd(),
    ]
    for factor in factors:
        direct = lf.residual_factor(factor, 1)
        reduced = residual_reduce(factor.evaluate(1))
        if direct != reduced:
            return False, f"pipelines disagree on {factor}"
    return True, ""


def _check_residual_twin_trees():
    descriptors = [
        lf.TwinTreeDescriptor(t=1, m_circ=2, labels=(1,), bounded_edges=()),
        lf.TwinTreeDescriptor(t=2, m_circ=1, labels=(1, 2), bounded_edges=((1, 1),)),
        lf.TwinTreeDescriptor(t=2, m_circ=2, labels=(1, 2), bounded_edges=((2, 2),)),
        lf.TwinTreeDescriptor(t=3, m_circ=1, labels=(1, 2, 3), bounded_edges=((1, 1), (3, 2))),
        lf.TwinTreeDescriptor(t=3, m_circ=2, labels=(1, 2, 3), bounded_edges=((1, 3),)),
    ]
    for desc in descriptors:
        factor = lf.TwinTree(desc)
        nvars = max(desc.labels)
        direct = lf.residual_factor(factor, nvars)
        reduced = residual_reduce(factor.evaluate(nvars))
        if direct != reduced:
            return False, f"pipelines disagree on {desc}"
    return True, ""


def _check_residual_base(d: int, cfg_from: tuple[int, ...], cfg_to: tuple[int, ...]):
    report = residual_report(d, tuple(cfg_from), tuple(cfg_to))
    return report.base_zero is True, f"top coefficient {report.top!r}"


def _check_residual_transfer(d: int, cfg_from: tuple[int, ...], cfg_to: tuple[int, ...]):
    report = residual_report(d, tuple(cfg_from), tuple(cfg_to))
    ok = bool(report.transfers) and all(t.both_zero for t in report.transfers)
    return ok, f"{len(report.transfers)} dissolved targets"


# ---------------------------------------------------------------------------
# Springer checks
# ---------------------------------------------------------------------------


def _check_pfister_aniso(s: int):
    form = pfister_concrete(s)
    if is_anisotropic(form) is not Verdict.ANISOTROPIC:
        return False, "form not certified anisotropic"
    unit_part, uniformizer_part = springer_split(form, s)
    previous = pfister_concrete(s - 1)
    residues_ok = (
        unit_part.restrict_variables(s - 1) == previous
        and uniformizer_part.restrict_variables(s - 1) == negate(previous)
    )
    if not residues_ok:
        return False, "residue forms are not +-(previous level)"
    return True, f"rank {form.rank}"


def _check_hyperbolic_plane():
    verdict = is_anisotropic(DiagonalForm(0, ((1, 0), (-1, 0))))
    return verdict is Verdict.ISOTROPIC, f"verdict {verdict.value}"


def _check_rational_binary():
    verdict = is_anisotropic(DiagonalForm(0, ((1, 0), (-2, 0))))
    return verdict is Verdict.ANISOTROPIC, f"verdict {verdict.value}"


# ---------------------------------------------------------------------------
# Suite assembly
# ---------------------------------------------------------------------------


_CHECK_FUNCS = {
    "type_a_product": _check_type_a_product,
    "square_field": _check_square_field,
    "elevator_square": _check_elevator_square,
    "universal_square_product": _check_universal_square_product,
    "gw_laws": _check_gw_laws,
    "pfister_torsion": _check_pfister_torsion,
    "rank_oracle": _check_rank_oracle,
    "count_anchor": _check_count_anchor,
    "signature_invariance": _check_signature_invariance,
    "anchor_type_a_m3": _check_anchor_type_a_m3,
    "anchor_twin_t1": _check_anchor_twin_t1,
    "anchor_twin_t2": _check_anchor_twin_t2,
    "anchor_twin_t3": _check_anchor_twin_t3,
    "anchor_crossing_product": _check_anchor_crossing_product,
    "dissolution": _check_dissolution,
    "wallcross_level": _check_wallcross_level,
    "graph_connected": _check_graph_connected,
    "residual_factors": _check_residual_factors,
    "residual_twin_trees": _check_residual_twin_trees,
    "residual_base": _check_residual_base,
    "residual_transfer": _check_residual_transfer,
    "pfister_aniso": _check_pfister_aniso,
    "hyperbolic_plane": _check_hyperbolic_plane,
    "rational_binary": _check_rational_binary,
}


def _identity_specs(budget: int):
    specs = []
    for family in (
        "type_a_product",
        "square_field",
        "elevator_square",
        "universal_square_product",
    ):
        for m in range(1, MAX_IDENTITY_WEIGHT + 1):
            specs.append((f"identity:{family.replace('_', '-')}:m={m}", family, (m,)))
    for q in GW_LAW_ORDERS:
        specs.append((f"gw-laws:fq{q}", "gw_laws", (q,)))
    for q in GW_LAW_ORDERS:
        for s in range(0, 4):
            specs.append((f"pfister-torsion:fq{q}:s={s}", "pfister_torsion", (q, s)))
    return specs


def _count_specs(budget: int):
    specs = []
    for d in range(1, min(3, budget) + 1):
        n = 3 * d - 1
        for s in range(0, n // 2 + 1):
            specs.append((f"rank-oracle:d={d}:s={s}", "rank_oracle", (d, s)))
    if budget >= 4:
        for s in range(0, 3):
            specs.append((f"rank-oracle:d=4:s={s}", "rank_oracle", (4, s)))
    if budget >= 3:
        specs.append(("count-anchor:d=3:s=0", "count_anchor", ()))
        for s in range(0, 5):
            specs.append(
                (f"signature-invariance:d=3:s={s}", "signature_invariance", (3, s))
            )
    specs.extend(
        [
            ("anchor:type-a-m3", "anchor_type_a_m3", ()),
            ("anchor:twin-t1", "anchor_twin_t1", ()),
            ("anchor:twin-t2", "anchor_twin_t2", ()),
            ("anchor:twin-t3", "anchor_twin_t3", ()),
            ("anchor:crossing-product", "anchor_crossing_product", ()),
        ]
    )
    return specs


def _dissolution_specs(budget: int):
    specs = []
    for d in range(1, min(3, budget) + 1):
        n = 3 * d - 1
        for s in range(1, n // 2 + 1):
            for cfg in enumerate_merge_configs(n, s):
                for j in range(1, s + 1):
                    cfg_str = ",".join(map(str, cfg))
                    specs.append(
                        (f"dissolution:d={d}:cfg={cfg_str}:j={j}", "dissolution", (d, cfg, j))
                    )
    return specs


def _wallcross_specs(budget: int):
    specs = []
    for d in (2, 3):
        if d > budget:
            continue
        n = 3 * d - 1
        for s in range(1, n // 2 + 1):
            specs.append((f"wallcross:d={d}:s={s}", "wallcross_level", (d, s)))
    for n in range(2, MAX_GRAPH_POINTS + 1):
        for s in range(0, n // 2 + 1):
            specs.append((f"merge-graph:n={n}:s={s}", "graph_connected", (n, s)))
    return specs


def _residual_specs(budget: int):
    specs = []
    for m in range(1, MAX_RESIDUAL_WEIGHT + 1):
        specs.append((f"residual-factors:m={m}", "residual_factors", (m,)))
    specs.append(("residual-twin-trees", "residual_twin_trees", ()))
    for d in range(2, min(3, budget) + 1):
        n = 3 * d - 1
        for cfg_from, cfg_to in unit_shift_pairs(n, 1):
            specs.append(
                (
                    f"residual-base:d={d}:{cfg_from[0]}-{cfg_to[0]}",
                    "residual_base",
                    (d, cfg_from, cfg_to),
                )
            )
    if budget >= 3:
        n = 8
        for s in range(2, n // 2 + 1):
            for cfg_from, cfg_to in unit_shift_pairs(n, s):
                from_str = ",".join(map(str, cfg_from))
                to_str = ",".join(map(str, cfg_to))
                specs.append(
                    (
                        f"residual-transfer:d=3:{from_str}>{to_str}",
                        "residual_transfer",
                        (3, cfg_from, cfg_to),
                    )
                )
    return specs


def _springer_specs(budget: int):
    specs = [(f"springer:pfister-aniso:s={s}", "pfister_aniso", (s,)) for s in range(1, 9)]
    specs.append(("springer:hyperbolic-plane", "hyperbolic_plane", ()))
    specs.append(("springer:rational-binary", "rational_binary", ()))
    return specs


def _all_specs(budget: int):
    return (
        _identity_specs(budget)
        + _count_specs(budget)
        + _dissolution_specs(budget)
        + _wallcross_specs(budget)
        + _residual_specs(budget)
        + _springer_specs(budget)
    )


_SUITE_BUILDERS = {
    "identities": _identity_specs,
    "counts": _count_specs,
    "dissolution": _dissolution_specs,
    "wallcross": _wallcross_specs,
    "residual": _residual_specs,
    "springer": _springer_specs,
    "all": _all_specs,
}


def _run_check(spec) -> CheckResult:
    check_id, fn_name, args = spec
    start = perf_counter()
    try:
        ok, detail = _CHECK_FUNCS[fn_name](*args)
    except Exception as exc:
        ok, detail = False, f"exception: {exc}"
    return CheckResult(check_id, ok, detail, perf_counter() - start)


def run_suite(name: str, budget: int = 4, jobs: int = 1) -> SuiteResult:
    """Run one verification suite; results keep their listed order."""
    if name not in _SUITE_BUILDERS:
        raise ValueError(f"unknown suite {name!r}; choose from {SUITE_NAMES}")
    if budget < 1:
        raise ValueError(f"budget must be a positive degree bound, got {budget}")
    if jobs < 1:
        raise ValueError(f"worker count must be positive, got {jobs}")
    specs = _SUITE_BUILDERS[name](budget)
    if jobs > 1 and len(specs) > 1:
        with get_context("fork").Pool(jobs) as pool:
            results = pool.map(_run_check, specs)
    else:
        results = [_run_check(spec) for spec in specs]
    return SuiteResult(name, tuple(results))
