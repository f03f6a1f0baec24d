"""Exact arithmetic in the rank-3 universal coefficient ring and its
multi-affine extension by involutive parameter variables.

The universal ring is free of rank 3 over the integers with basis
``{<1>, h, <2>}`` and multiplication determined by

    h*h   = 2h,
    h*<2> = h,
    <2>*<2> = <1>.

Here ``<u>`` denotes the class of the rank-one form scaled by the unit u
and ``h`` the hyperbolic form.  The derived symbols are

    <-1> = h - <1>,      <-2> = h - <2>.

The multi-affine extension adjoins commuting variables ``x_1 .. x_s``
subject to ``x_l**2 = 1``; ``x_l`` stands for the square class of the
l-th double-point parameter.  Elements are sparse maps from subsets of
``{1..s}`` to universal-ring coefficients, so multiplication convolves
keys by symmetric difference.

All coefficients are Python integers and therefore arbitrary precision;
no arithmetic in this module can overflow or round.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping


# ---------------------------------------------------------------------------
# Universal ring elements
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class UnivElement:
    """Element c1*<1> + ch*h + c2*<2> of the universal coefficient ring."""

    c1: int = 0
    ch: int = 0
    c2: int = 0

    def __add__(self, other: "UnivElement") -> "UnivElement":
        return UnivElement(self.c1 + other.c1, self.ch + other.ch, self.c2 + other.c2)

    def __sub__(self, other: "UnivElement") -> "UnivElement":
        return UnivElement(self.c1 - other.c1, self.ch - other.ch, self.c2 - other.c2)

    def __neg__(self) -> "UnivElement":
        return UnivElement(-self.c1, -self.ch, -self.c2)

    def __rmul__(self, n: int) -> "UnivElement":
        if not isinstance(n, int):
            return NotImplemented
        return UnivElement(n * self.c1, n * self.ch, n * self.c2)

    def __mul__(self, other):
        if isinstance(other, int):
            return UnivElement(other * self.c1, other * self.ch, other * self.c2)
        if not isinstance(other, UnivElement):
            return NotImplemented
        a1, ah, a2 = self.c1, self.ch, self.c2
        b1, bh, b2 = other.c1, other.ch, other.c2
        # h absorbs every rank-one symbol: h*<u> = h, and h*h = 2h.
        return UnivElement(
            a1 * b1 + a2 * b2,
            a1 * bh + ah * b1 + 2 * ah * bh + ah * b2 + a2 * bh,
            a1 * b2 + a2 * b1,
        )

    def is_zero(self) -> bool:
        return self.c1 == 0 and self.ch == 0 and self.c2 == 0

    @property
    def rank(self) -> int:
        return self.c1 + 2 * self.ch + self.c2

    def coords(self) -> tuple[int, int, int]:
        """Coordinates (n1, n2, m) = (<1>-coeff, <2>-coeff, h-coeff)."""
        return (self.c1, self.c2, self.ch)

    def to_json(self) -> dict:
        return {"one": self.c1, "h": self.ch, "two": self.c2}

    @classmethod
    def from_json(cls, data: Mapping) -> "UnivElement":
        return cls(int(data["one"]), int(data["h"]), int(data["two"]))

    def __repr__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for coeff, sym in ((self.c1, "<1>"), (self.ch, "h"), (self.c2, "<2>")):
            if coeff == 0:
                continue
            if coeff == 1:
                parts.append(sym)
            elif coeff == -1:
                parts.append(f"-{sym}")
            else:
                parts.append(f"{coeff}{sym}")
        return " + ".join(parts).replace("+ -", "- ")


UNIV_ZERO = UnivElement(0, 0, 0)
UNIV_ONE = UnivElement(1, 0, 0)
UNIV_H = UnivElement(0, 1, 0)
UNIV_TWO = UnivElement(0, 0, 1)
UNIV_MINUS_ONE = UNIV_H - UNIV_ONE
UNIV_MINUS_TWO = UNIV_H - UNIV_TWO


def univ_mul(a: UnivElement, b: UnivElement) -> UnivElement:
    return a * b


def univ_coords(e: UnivElement) -> tuple[int, int, int]:
    """Return (n1, n2, m) with e = n1*<1> + n2*<2> + m*h."""
    return e.coords()


# ---------------------------------------------------------------------------
# Multi-affine extension
# ---------------------------------------------------------------------------


def _as_univ(value) -> UnivElement:
    if isinstance(value, UnivElement):
        return value
    if isinstance(value, int):
        return UnivElement(value, 0, 0)
    raise TypeError(f"cannot coerce {value!r} to a universal-ring element")


class TildeElement:
    """Sparse element of the multi-affine extension in ``nvars`` variables.

    Coefficients are keyed by frozen subsets of {1..nvars}; the empty key
    is the constant part.  Every variable is involutive, so keys multiply
    by symmetric difference and no key ever repeats a variable.
    """

    __slots__ = ("nvars", "coeffs")

    def __init__(self, nvars: int, coeffs: Mapping[frozenset, UnivElement] | None = None):
        if nvars < 0:
            raise ValueError("nvars must be non-negative")
        self.nvars = nvars
        clean: dict[frozenset, UnivElement] = {}
        if coeffs:
            for key, val in coeffs.items():
                key = frozenset(key)
                if any(not 1 <= l <= nvars for l in key):
                    raise ValueError(f"variable label out of range in key {sorted(key)}")
                val = _as_univ(val)
                if not val.is_zero():
                    clean[key] = val
        self.coeffs = clean

    # -- constructors ------------------------------------------------------

    @classmethod
    def constant(cls, value, nvars: int) -> "TildeElement":
        return cls(nvars, {frozenset(): _as_univ(value)})

    @classmethod
    def variable(cls, label: int, nvars: int) -> "TildeElement":
        if not 1 <= label <= nvars:
            raise ValueError(f"variable label {label} out of range 1..{nvars}")
        return cls(nvars, {frozenset({label}): UNIV_ONE})

    @classmethod
    def zero(cls, nvars: int) -> "TildeElement":
        return cls(nvars, {})

    # -- ring structure ----------------------------------------------------

    def _check_compatible(self, other: "TildeElement") -> None:
        if self.nvars != other.nvars:
            raise ValueError(
                f"variable count mismatch: {self.nvars} vs {other.nvars}"
            )

    def __add__(self, other: "TildeElement") -> "TildeElement":
        self._check_compatible(other)
        out = dict(self.coeffs)
        for key, val in other.coeffs.items():
            out[key] = out.get(key, UNIV_ZERO) + val
        return TildeElement(self.nvars, out)

    def __sub__(self, other: "TildeElement") -> "TildeElement":
        self._check_compatible(other)
        out = dict(self.coeffs)
        for key, val in other.coeffs.items():
            out[key] = out.get(key, UNIV_ZERO) - val
        return TildeElement(self.nvars, out)

    def __neg__(self) -> "TildeElement":
        return TildeElement(self.nvars, {k: -v for k, v in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, (int, UnivElement)):
            u = _as_univ(other)
            return TildeElement(self.nvars, {k: v * u for k, v in self.coeffs.items()})
        if not isinstance(other, TildeElement):
            return NotImplemented
        self._check_compatible(other)
        out: dict[frozenset, UnivElement] = {}
        for ka, va in self.coeffs.items():
            for kb, vb in other.coeffs.items():
                key = ka ^ kb
                prod = va * vb
                out[key] = out.get(key, UNIV_ZERO) + prod
        return TildeElement(self.nvars, out)

    def __rmul__(self, other):
        if isinstance(other, (int, UnivElement)):
            return self.__mul__(other)
        return NotImplemented

    def __eq__(self, other) -> bool:
        if not isinstance(other, TildeElement):
            return NotImplemented
        return self.nvars == other.nvars and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.nvars, frozenset(self.coeffs.items())))

    def is_zero(self) -> bool:
        return not self.coeffs

    # -- queries -----------------------------------------------------------

    def coefficient(self, labels: Iterable[int]) -> UnivElement:
        return self.coeffs.get(frozenset(labels), UNIV_ZERO)

    @property
    def rank(self) -> int:
        """Rank of the image under any field map (all x_l have rank 1)."""
        return sum(v.rank for v in self.coeffs.values())

    def substitute_one(self, label: int) -> "TildeElement":
        """Set x_label = <1>.  The result still lives in the same variable set."""
        if not 1 <= label <= self.nvars:
            raise ValueError(f"variable label {label} out of range")
        out: dict[frozenset, UnivElement] = {}
        for key, val in self.coeffs.items():
            key = key - {label}
            out[key] = out.get(key, UNIV_ZERO) + val
        return TildeElement(self.nvars, out)

    def drop_variable(self, label: int) -> "TildeElement":
        """Remove an unused variable slot, shifting higher labels down by one."""
        if not 1 <= label <= self.nvars:
            raise ValueError(f"variable label {label} out of range")
        out: dict[frozenset, UnivElement] = {}
        for key, val in self.coeffs.items():
            if label in key:
                raise ValueError(f"variable {label} still occurs; substitute first")
            out[frozenset(l - 1 if l > label else l for l in key)] = val
        return TildeElement(self.nvars - 1, out)

    def to_json(self) -> list:
        items = sorted(self.coeffs.items(), key=lambda kv: (len(kv[0]), sorted(kv[0])))
        return [{"vars": sorted(k), "coeff": v.to_json()} for k, v in items]

    @classmethod
    def from_json(cls, data: list, nvars: int) -> "TildeElement":
        coeffs = {
            frozenset(entry["vars"]): UnivElement.from_json(entry["coeff"])
            for entry in data
        }
        return cls(nvars, coeffs)

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        items = sorted(self.coeffs.items(), key=lambda kv: (len(kv[0]), sorted(kv[0])))
        parts = []
        for key, val in items:
            mono = "".join(f"x{l}" for l in sorted(key))
            parts.append(f"({val!r}){mono}" if mono else f"({val!r})")
        return " + ".join(parts)


def tilde_mul(a: TildeElement, b: TildeElement) -> TildeElement:
    return a * b


def top_coefficient(e: TildeElement) -> UnivElement:
    """Coefficient of the full monomial x_1 x_2 ... x_s."""
    return e.coefficient(range(1, e.nvars + 1))


# ---------------------------------------------------------------------------
# Multi-affine cascade
# ---------------------------------------------------------------------------


def cascade_decompose(
    e: TildeElement, order: Iterable[int]
) -> tuple[list[TildeElement], UnivElement]:
    """Peel variables off ``e`` one at a time in the given order.

    Writing F_0 = e and F_{q-1} = A_q + x_{j_q} * B_q with A_q free of
    x_{j_q}, the step records the witness S_q = A_q + B_q and continues
    with F_q = B_q.  After all s steps the residue F_s is a constant,
    the coefficient of the full monomial.  The defining identity

        e = sum_q S_q * prod_{p<q} (x_{j_p} - 1)
              + F_s * prod_{p<=s} (x_{j_p} - 1)

    is exercised by ``cascade_reconstruct`` and the property tests.

    Returns (witnesses, full_coefficient).  Witnesses are expressed in
    the ambient variable set; witness q does not involve x_{j_1}..x_{j_q}.
    """
    order = list(order)
    if sorted(order) != list(range(1, e.nvars + 1)):
        raise ValueError(f"order {order} is not a permutation of 1..{e.nvars}")
    witnesses: list[TildeElement] = []
    current = e
    for label in order:
        a_part: dict[frozenset, UnivElement] = {}
        b_part: dict[frozenset, UnivElement] = {}
        for key, val in current.coeffs.items():
            if label in key:
                b_part[key - {label}] = val
            else:
                a_part[key] = val
        a_elt = TildeElement(e.nvars, a_part)
        b_elt = TildeElement(e.nvars, b_part)
        witnesses.append(a_elt + b_elt)
        current = b_elt
    return witnesses, current.coefficient(())


def cascade_reconstruct(
    witnesses: list[TildeElement], full: UnivElement, order: Iterable[int], nvars: int
) -> TildeElement:
    """Rebuild the decomposed element from its cascade data."""
    order = list(order)
    total = TildeElement.zero(nvars)
    shift = TildeElement.constant(UNIV_ONE, nvars)
    one = TildeElement.constant(UNIV_ONE, nvars)
    for label, witness in zip(order, witnesses):
        total = total + witness * shift
        shift = shift * (TildeElement.variable(label, nvars) - one)
    return total + shift * full


# ---------------------------------------------------------------------------
# Residual quotient (coefficients mod 2, h killed)
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class ResidualElement:
    """Element a + b*eps of F_2[eps]/(eps^2 - 1).

    The quotient of the universal ring by (2, h); eps is the image of <2>.
    """

    a: int = 0
    b: int = 0

    def __post_init__(self):
        object.__setattr__(self, "a", self.a & 1)
        object.__setattr__(self, "b", self.b & 1)

    def __add__(self, other: "ResidualElement") -> "ResidualElement":
        return ResidualElement(self.a ^ other.a, self.b ^ other.b)

    __sub__ = __add__

    def __mul__(self, other: "ResidualElement") -> "ResidualElement":
        return ResidualElement(
            (self.a & other.a) ^ (self.b & other.b),
            (self.a & other.b) ^ (self.b & other.a),
        )

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def __repr__(self) -> str:
        return {(0, 0): "0", (1, 0): "1", (0, 1): "eps", (1, 1): "1 + eps"}[
            (self.a, self.b)
        ]


RES_ZERO = ResidualElement(0, 0)
RES_ONE = ResidualElement(1, 0)
RES_EPS = ResidualElement(0, 1)


class ResidualTilde:
    """Multi-affine element with residual-ring coefficients."""

    __slots__ = ("nvars", "coeffs")

    def __init__(self, nvars: int, coeffs: Mapping[frozenset, ResidualElement] | None = None):
        self.nvars = nvars
        clean: dict[frozenset, ResidualElement] = {}
        if coeffs:
            for key, val in coeffs.items():
                key = frozenset(key)
                if any(not 1 <= l <= nvars for l in key):
                    raise ValueError(f"variable label out of range in key {sorted(key)}")
                if not val.is_zero():
                    clean[key] = val
        self.coeffs = clean

    @classmethod
    def constant(cls, value: ResidualElement, nvars: int) -> "ResidualTilde":
        return cls(nvars, {frozenset(): value})

    @classmethod
    def zero(cls, nvars: int) -> "ResidualTilde":
        return cls(nvars, {})

    def __add__(self, other: "ResidualTilde") -> "ResidualTilde":
        if self.nvars != other.nvars:
            raise ValueError("variable count mismatch")
        out = dict(self.coeffs)
        for key, val in other.coeffs.items():
            out[key] = out.get(key, RES_ZERO) + val
        return ResidualTilde(self.nvars, out)

    __sub__ = __add__

    def __mul__(self, other: "ResidualTilde") -> "ResidualTilde":
        if self.nvars != other.nvars:
            raise ValueError("variable count mismatch")
        out: dict[frozenset, ResidualElement] = {}
        for ka, va in self.coeffs.items():
            for kb, vb in other.coeffs.items():
                key = ka ^ kb
                out[key] = out.get(key, RES_ZERO) + va * vb
        return ResidualTilde(self.nvars, out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ResidualTilde):
            return NotImplemented
        return self.nvars == other.nvars and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.nvars, frozenset(self.coeffs.items())))

    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, labels: Iterable[int]) -> ResidualElement:
        return self.coeffs.get(frozenset(labels), RES_ZERO)

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        items = sorted(self.coeffs.items(), key=lambda kv: (len(kv[0]), sorted(kv[0])))
        parts = []
        for key, val in items:
            mono = "".join(f"x{l}" for l in sorted(key))
            parts.append(f"({val!r}){mono}" if mono else f"({val!r})")
        return " + ".join(parts)


def residual_reduce(e):
    """Image in the residual quotient: coefficients mod 2 with h killed.

    Accepts a UnivElement (returning a ResidualElement) or a TildeElement
    (returning a ResidualTilde).
    """
    if isinstance(e, UnivElement):
        return ResidualElement(e.c1, e.c2)
    if isinstance(e, TildeElement):
        return ResidualTilde(
            e.nvars, {k: ResidualElement(v.c1, v.c2) for k, v in e.coeffs.items()}
        )
    raise TypeError(f"cannot reduce {type(e).__name__}")
