"""Wall-crossing differences, cascade extraction, and verification reports.

A wall crossing compares the enriched counts at two merge configurations
of the same size.  Peeling the formal variables off the difference one at
a time (pairing label s first, then the remaining labels in ascending
order) writes

    delta = sum_q S_q * prod_{p<q} (x_{j_p} - <1>)
            + C * prod_l (x_{j_l} - <1>)

where the witnesses S_q vanish in every field model whenever the counts
are merge-position independent, and the full-monomial coefficient
C = n1<1> + n2<2> + m*h carries the obstruction data: n1 + n2 vanishes
by the real-signature argument and n1 is even by the Laurent-series
anisotropy certificate.

Reports evaluate every check as data (verdicts, not exceptions) so
sweeps over many configuration pairs never abort on a failing check.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .diagrams import (
    enumerate_merge_configs,
    floor_count,
    floor_count_residual,
    unit_shifts,
)
from .fields import ClosedField, FiniteField, RealField, specialize_field
from .univ import (
    UNIV_ONE,
    UNIV_TWO,
    ResidualElement,
    ResidualTilde,
    TildeElement,
    UnivElement,
    cascade_decompose,
    cascade_reconstruct,
    residual_reduce,
    top_coefficient,
    univ_coords,
)

SCHEMA_VERSION = "gwfloor/1"

SWEEP_FQ_ORDERS = (5, 7, 11, 13)
WITNESS_FQ_ORDERS = (5, 7, 11)


# ---------------------------------------------------------------------------
# Differences and the Pfister element
# ---------------------------------------------------------------------------


def delta_count(d: int, cfg_from, cfg_to) -> TildeElement:
    """Difference of the enriched counts at two merge configurations."""
    cfg_from = tuple(cfg_from)
    cfg_to = tuple(cfg_to)
    if len(cfg_from) != len(cfg_to):
        raise ValueError(
            f"configurations pair different numbers of points: "
            f"{cfg_from} vs {cfg_to}"
        )
    return floor_count(d, cfg_from) - floor_count(d, cfg_to)


def pfister_element(s: int) -> TildeElement:
    """The 2-torsion product (<1> - <2>) * prod_l (<1> - x_l) on s variables."""
    if s < 0:
        raise ValueError(f"variable count must be nonnegative, got {s}")
    out = TildeElement.constant(UNIV_ONE - UNIV_TWO, s)
    one = TildeElement.constant(UNIV_ONE, s)
    for label in range(1, s + 1):
        out = out * (one - TildeElement.variable(label, s))
    return out


def proof_cascade_order(s: int) -> list[int]:
    """Witness-extraction order: the pairing label s first, then 1..s-1."""
    if s <= 0:
        return []
    return [s, *range(1, s)]


def extract_universal_coefficient(
    delta: TildeElement, order=None
) -> tuple[UnivElement, tuple[TildeElement, ...]]:
    """Split off the full-monomial coefficient together with its witnesses.

    The coefficient is independent of the peeling order; the witnesses
    are reproducible because the default order is fixed.
    """
    if order is None:
        order = proof_cascade_order(delta.nvars)
    witnesses, full = cascade_decompose(delta, order)
    return full, tuple(witnesses)


# ---------------------------------------------------------------------------
# Field sweeps
# ---------------------------------------------------------------------------


def describe_assign(model, assign: dict) -> str:
    """Stable string form of an assignment for report output."""
    labels = sorted(assign)
    if isinstance(model, RealField):
        return "".join("+" if assign[l] == 1 else "-" for l in labels)
    if isinstance(model, FiniteField):
        return "/".join("sq" if assign[l] == 0 else "ns" for l in labels)
    return ""


def default_field_sweep(s: int) -> list[tuple[object, dict]]:
    """Deterministic sweep: real signs, finite fields, closed rank check.

    Real patterns run over all 2^s sign choices; each finite-field model
    runs over all 2^s square/non-square choices; the closed model needs a
    single assignment since every unit is a square there.
    """
    entries: list[tuple[object, dict]] = []
    real = RealField()
    for pattern in itertools.product((1, -1), repeat=s):
        entries.append((real, dict(zip(range(1, s + 1), pattern))))
    for q in SWEEP_FQ_ORDERS:
        model = FiniteField(q)
        for pattern in itertools.product((0, 1), repeat=s):
            entries.append((model, dict(zip(range(1, s + 1), pattern))))
    entries.append((ClosedField(), {l: 0 for l in range(1, s + 1)}))
    return entries


# ---------------------------------------------------------------------------
# Wall-crossing report
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class FieldCheck:
    model: str
    assign: str
    ok: bool

    def to_json(self) -> dict:
        return {"model": self.model, "assign": self.assign, "ok": self.ok}


@dataclass(frozen=True, slots=True)
class WallCrossReport:
    """All vanishing checks for one wall crossing, evaluated as data."""

    d: int
    cfg_from: tuple[int, ...]
    cfg_to: tuple[int, ...]
    delta: TildeElement
    coefficient: UnivElement
    witnesses: tuple[TildeElement, ...]
    n1: int
    n2: int
    m: int
    rank_zero: bool
    broccoli: bool
    parity: bool
    field_checks: tuple[FieldCheck, ...]
    witnesses_zero: bool
    reconstruction: bool

    @property
    def s(self) -> int:
        return len(self.cfg_from)

    @property
    def passed(self) -> bool:
        return (
            self.rank_zero
            and self.broccoli
            and self.parity
            and self.witnesses_zero
            and self.reconstruction
            and all(c.ok for c in self.field_checks)
        )

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "d": self.d,
            "s": self.s,
            "from": list(self.cfg_from),
            "to": list(self.cfg_to),
            "n1": self.n1,
            "n2": self.n2,
            "m": self.m,
            "checks": {
                "rank_zero": self.rank_zero,
                "broccoli": self.broccoli,
                "parity": self.parity,
                "field_zero": [c.to_json() for c in self.field_checks],
                "witnesses_zero": self.witnesses_zero,
                "reconstruction": self.reconstruction,
            },
            "passed": self.passed,
        }


def _all_assignments(s: int, values: tuple[int, ...]):
    for pattern in itertools.product(values, repeat=s):
        yield dict(zip(range(1, s + 1), pattern))


def wallcross_report(d: int, cfg_from, cfg_to, sweep=None) -> WallCrossReport:
    """Evaluate every vanishing check for the given configuration pair."""
    cfg_from = tuple(cfg_from)
    cfg_to = tuple(cfg_to)
    delta = delta_count(d, cfg_from, cfg_to)
    s = len(cfg_from)
    order = proof_cascade_order(s)
    coefficient, witnesses = extract_universal_coefficient(delta, order)
    n1, n2, m = univ_coords(coefficient)

    if sweep is None:
        sweep = default_field_sweep(s)
    field_checks = tuple(
        FieldCheck(
            model.describe(),
            describe_assign(model, assign),
            specialize_field(delta, model, assign).is_zero(),
        )
        for model, assign in sweep
    )

    witnesses_zero = all(
        specialize_field(w, FiniteField(q), assign).is_zero()
        for w in witnesses
        for q in WITNESS_FQ_ORDERS
        for assign in _all_assignments(s, (0, 1))
    )
    reconstruction = (
        cascade_reconstruct(list(witnesses), coefficient, order, s) == delta
    )

    return WallCrossReport(
        d=d,
        cfg_from=cfg_from,
        cfg_to=cfg_to,
        delta=delta,
        coefficient=coefficient,
        witnesses=witnesses,
        n1=n1,
        n2=n2,
        m=m,
        rank_zero=delta.rank == 0,
        broccoli=n1 + n2 == 0,
        parity=n1 % 2 == 0,
        field_checks=field_checks,
        witnesses_zero=witnesses_zero,
        reconstruction=reconstruction,
    )


# ---------------------------------------------------------------------------
# Residual-ring report
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class TransferCheck:
    """One instance of the mod-2 transfer congruence after dissolution.

    lhs is the <1>-parity of the source top coefficient (s pairs); rhs is
    the eps-parity of the target top coefficient (s-1 pairs).  The
    congruence asserts lhs == rhs; the stronger expected outcome is that
    both sides vanish.
    """

    target_from: tuple[int, ...]
    target_to: tuple[int, ...]
    lhs: int
    rhs: int

    @property
    def congruent(self) -> bool:
        return self.lhs == self.rhs

    @property
    def both_zero(self) -> bool:
        return self.lhs == 0 and self.rhs == 0

    def to_json(self) -> dict:
        return {
            "target_from": list(self.target_from),
            "target_to": list(self.target_to),
            "lhs": self.lhs,
            "rhs": self.rhs,
            "congruent": self.congruent,
            "both_zero": self.both_zero,
        }


@dataclass(frozen=True, slots=True)
class ResidualReport:
    """Mod-2 data of a wall crossing in the quotient ring.

    The residual image is computed along an independent mod-2 pipeline
    (per-factor residual tables) and must agree with the reduction of the
    integral difference; construction asserts that agreement.
    """

    d: int
    cfg_from: tuple[int, ...]
    cfg_to: tuple[int, ...]
    residual_delta: ResidualTilde
    top: ResidualElement
    base_zero: bool | None
    transfers: tuple[TransferCheck, ...]

    @property
    def s(self) -> int:
        return len(self.cfg_from)

    @property
    def passed(self) -> bool:
        base_ok = True if self.base_zero is None else self.base_zero
        return base_ok and all(t.both_zero for t in self.transfers)

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "d": self.d,
            "s": self.s,
            "from": list(self.cfg_from),
            "to": list(self.cfg_to),
            "residual": [
                {"vars": sorted(key), "one": val.a, "eps": val.b}
                for key, val in sorted(
                    self.residual_delta.coeffs.items(),
                    key=lambda kv: (len(kv[0]), sorted(kv[0])),
                )
            ],
            "top": {"one": self.top.a, "eps": self.top.b},
            "base_zero": self.base_zero,
            "transfers": [t.to_json() for t in self.transfers],
            "passed": self.passed,
        }


def unit_shift_pairs(n: int, s: int) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Unordered unit-shift pairs at the given level, in a stable order."""
    pairs = []
    for cfg in enumerate_merge_configs(n, s):
        for other in unit_shifts(cfg, n):
            if cfg < other:
                pairs.append((cfg, other))
    return sorted(pairs)


def residual_report(d: int, cfg_from, cfg_to) -> ResidualReport:
    """Mod-2 analysis of one wall crossing.

    For a single pair (s = 1) the verdict records whether the <1>-parity
    of the top coefficient vanishes.  For s >= 2 the transfer congruence
    is evaluated against every unit-shift pair of the problem with one
    pair dissolved.
    """
    cfg_from = tuple(cfg_from)
    cfg_to = tuple(cfg_to)
    s = len(cfg_from)
    n = 3 * d - 1

    delta = delta_count(d, cfg_from, cfg_to)
    residual_delta = floor_count_residual(d, cfg_from) - floor_count_residual(
        d, cfg_to
    )
    if residual_delta != residual_reduce(delta):
        raise AssertionError(
            "independent mod-2 pipeline disagrees with the reduced difference"
        )

    top = residual_delta.coefficient(range(1, s + 1))
    if top != residual_reduce(top_coefficient(delta)):
        raise AssertionError(
            "residual top coefficient disagrees with the reduced coefficient"
        )

    base_zero = (top.a == 0) if s == 1 else None

    transfers = []
    if s >= 2:
        for target_from, target_to in unit_shift_pairs(n, s - 1):
            target_delta = delta_count(d, target_from, target_to)
            _, target_n2, _ = univ_coords(top_coefficient(target_delta))
            transfers.append(
                TransferCheck(
                    target_from=target_from,
                    target_to=target_to,
                    lhs=top.a,
                    rhs=target_n2 % 2,
                )
            )

    return ResidualReport(
        d=d,
        cfg_from=cfg_from,
        cfg_to=cfg_to,
        residual_delta=residual_delta,
        top=top,
        base_zero=base_zero,
        transfers=tuple(transfers),
    )
