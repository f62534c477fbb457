"""Range arithmetic for the bounded-cohomology stability machinery.

The decision procedure takes a degree ``q``, a rank ``r``, and an
initial-condition threshold ``q0``, and evaluates two windowed minima of
range functions; the maps in degree ``q`` are an isomorphism (and in
degree ``q + 1`` injective) whenever both minima are nonnegative.  For
the concrete range functions attached to the classical families the
condition collapses to the closed form ``r >= 2 * gamma_star(q)``.

Minima over empty windows are plus infinity, which makes degrees up to
``q0`` stable with no special-casing; a saturating extended-integer type
carries the two infinities through the arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Union

from .errors import InadmissibleParameters
from .families import FamilySpec


class ExtInt:
    """An integer extended with saturating plus/minus infinity."""

    __slots__ = ("finite", "value")

    def __init__(self, value: int):
        object.__setattr__(self, "finite", True)
        object.__setattr__(self, "value", int(value))

    def __setattr__(self, name, _value):
        raise AttributeError(f"ExtInt is immutable, cannot set {name!r}")

    @classmethod
    def _infinite(cls, sign: int) -> "ExtInt":
        out = object.__new__(cls)
        object.__setattr__(out, "finite", False)
        object.__setattr__(out, "value", sign)
        return out

    @staticmethod
    def wrap(x: Union["ExtInt", int]) -> "ExtInt":
        return x if isinstance(x, ExtInt) else ExtInt(x)

    def __repr__(self) -> str:
        if self.finite:
            return str(self.value)
        return "+inf" if self.value > 0 else "-inf"

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = ExtInt(other)
        if not isinstance(other, ExtInt):
            return NotImplemented
        return (self.finite, self.value) == (other.finite, other.value)

    def __hash__(self) -> int:
        return hash((self.finite, self.value))

    def _cmp_key(self):
        if self.finite:
            return (0, self.value)
        return (self.value, 0)  # (-1, 0) below all finite, (1, 0) above

    def __lt__(self, other) -> bool:
        other = ExtInt.wrap(other)
        return self._cmp_key() < other._cmp_key()

    def __le__(self, other) -> bool:
        other = ExtInt.wrap(other)
        return self._cmp_key() <= other._cmp_key()

    def __gt__(self, other) -> bool:
        return not self <= other

    def __ge__(self, other) -> bool:
        return not self < other

    def __add__(self, other) -> "ExtInt":
        other = ExtInt.wrap(other)
        if self.finite and other.finite:
            return ExtInt(self.value + other.value)
        if self.finite:
            return other
        if other.finite or other.value == self.value:
            return self
        raise InadmissibleParameters("cannot add opposite infinities")

    __radd__ = __add__

    def __sub__(self, other) -> "ExtInt":
        other = ExtInt.wrap(other)
        if other.finite:
            return self + ExtInt(-other.value)
        return self + ExtInt._infinite(-other.value)

    def __int__(self) -> int:
        if not self.finite:
            raise InadmissibleParameters("infinite value has no integer form")
        return self.value


POS_INFINITY = ExtInt._infinite(1)
NEG_INFINITY = ExtInt._infinite(-1)

ExtIntLike = Union[ExtInt, int]
RangeFn = Callable[[int], ExtIntLike]


def gamma_star(l: int) -> int:
    """The exponential range seed: 2**l plus the round-up of (l+1)/2."""
    if l < 0:
        raise InadmissibleParameters(f"range seed needs l >= 0, got {l}")
    return 2**l + (l + 2) // 2


def gamma_tilde(r: int) -> ExtInt:
    """Largest ``l`` with ``gamma_star(l) <= r``; minus infinity if none.

    Total in ``r``: negative arguments simply have an empty window.
    """
    if r < gamma_star(0):
        return NEG_INFINITY
    l = 0
    while gamma_star(l + 1) <= r:
        l += 1
    return ExtInt(l)


def gamma(r: int) -> ExtInt:
    """The rank-indexed range function: ``gamma_tilde`` at ``(r-1)//2``."""
    return gamma_tilde((r - 1) // 2)


def tau(r: int) -> int:
    """Transitivity degree of the standard family: ``r - 1``."""
    return r - 1


def tilde_ranges(
    q: int,
    r: int,
    q0: int,
    gamma_fn: RangeFn = gamma,
    tau_fn: RangeFn = tau,
) -> tuple[ExtInt, ExtInt]:
    """The two windowed minima over ``j`` in ``{q0+1, ..., q}`` of
    ``gamma(r+1-2(q-j)) - j`` and ``tau(r+1-2(q-j)) - j``.

    Empty windows (``q <= q0``) give plus infinity.
    """
    tg = POS_INFINITY
    tt = POS_INFINITY
    for j in range(q0 + 1, q + 1):
        arg = r + 1 - 2 * (q - j)
        tg = min(tg, ExtInt.wrap(gamma_fn(arg)) - j)
        tt = min(tt, ExtInt.wrap(tau_fn(arg)) - j)
    return tg, tt


@dataclass(frozen=True)
class StabilityDecision:
    """Outcome of the stability condition at one (degree, rank) pair."""

    q: int
    r: int
    q0: int
    iso: bool
    inj: bool
    tilde_gamma_qr: ExtInt
    tilde_tau_qr: ExtInt


def decide(
    q: int,
    r: int,
    q0: int,
    gamma_fn: RangeFn = gamma,
    tau_fn: RangeFn = tau,
) -> StabilityDecision:
    """Decide stability in degree ``q`` at rank ``r``: isomorphism in
    degree ``q`` and injectivity in degree ``q + 1`` exactly when
    ``min(tilde_gamma, tilde_tau - 1) >= 0``.

    Degrees ``q <= q0`` hold by the initial condition, which is the
    empty-window case of the minima.
    """
    tg, tt = tilde_ranges(q, r, q0, gamma_fn, tau_fn)
    ok = tg >= 0 and tt - 1 >= 0
    return StabilityDecision(
        q=q, r=r, q0=q0, iso=ok, inj=ok, tilde_gamma_qr=tg, tilde_tau_qr=tt
    )


@dataclass(frozen=True)
class RangeRow:
    q: int
    r0: int
    r1: Optional[int]


@dataclass(frozen=True)
class RangeReport:
    """Stable-range table of a family: isomorphism from rank ``r0(q)``
    and injectivity from rank ``r1(q)`` on, per degree."""

    family: FamilySpec
    rows: tuple[RangeRow, ...]


def range_report(family: FamilySpec, q_max: int) -> RangeReport:
    """Tabulate the closed-form ranges ``r0(q) = 2*gamma_star(q)`` for
    degrees above the family's initial condition, and
    ``r1(q) = 2*gamma_star(q-1)`` one degree later."""
    q0 = family.q0
    if q_max < q0 + 1:
        raise InadmissibleParameters(
            f"table needs q_max >= {q0 + 1} for this family, got {q_max}"
        )
    rows = []
    for q in range(q0 + 1, q_max + 1):
        r0 = 2 * gamma_star(q)
        r1 = 2 * gamma_star(q - 1) if q >= q0 + 2 else None
        assert r0 <= 4 * 2**q  # the advertised exponential envelope
        rows.append(RangeRow(q=q, r0=r0, r1=r1))
    return RangeReport(family=family, rows=tuple(rows))
