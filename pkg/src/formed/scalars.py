"""Exact scalars over the rationals and the Gaussian rationals.

A :class:`Scalar` is a pair ``(re, im)`` of :class:`fractions.Fraction`
values representing ``re + im*i``; plain rationals simply keep ``im = 0``.
All arithmetic is exact — floating point is never used anywhere in this
package.

A :class:`FieldSpec` fixes the ambient field together with its involution
``sigma`` and the sign ``epsilon`` of the form; only the three normalized
combinations are allowed:

    (Identity, Minus)      alternating forms
    (Identity, Plus)       symmetric forms
    (Conjugation, Plus)    hermitian forms (Gaussian rationals only)
"""
from __future__ import annotations

import re as _re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from random import Random

from .errors import DivisionByZero, InadmissibleParameters

__all__ = [
    "Base",
    "Involution",
    "Epsilon",
    "FieldSpec",
    "Scalar",
    "ZERO",
    "ONE",
    "IMAG",
    "apply_sigma",
    "epsilon_scalar",
    "format_scalar",
    "parse_scalar",
    "random_scalar",
]


class Base(Enum):
    RATIONALS = "rationals"
    GAUSSIAN_RATIONALS = "gaussian_rationals"


class Involution(Enum):
    IDENTITY = "identity"
    CONJUGATION = "conjugation"


class Epsilon(Enum):
    PLUS = 1
    MINUS = -1


_FRACTION_ZERO = Fraction(0)
_FRACTION_ONE = Fraction(1)


class Scalar:
    """An element of Q or Q(i), stored as exact real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if isinstance(re, Fraction) else Fraction(re)
        self.im = im if isinstance(im, Fraction) else Fraction(im)

    @classmethod
    def _raw(cls, re: Fraction, im: Fraction) -> "Scalar":
        # Internal fast constructor: parts must already be Fractions.
        s = object.__new__(cls)
        s.re = re
        s.im = im
        return s

    # -- predicates ------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.re and not self.im

    def is_one(self) -> bool:
        return self.re == 1 and not self.im

    def is_rational(self) -> bool:
        return not self.im

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    # -- arithmetic ------------------------------------------------------

    @staticmethod
    def _coerce(x) -> "Scalar":
        if isinstance(x, Scalar):
            return x
        if isinstance(x, (int, Fraction)):
            return Scalar._raw(Fraction(x), _FRACTION_ZERO)
        return NotImplemented

    def __add__(self, other):
        other = Scalar._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Scalar._raw(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = Scalar._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Scalar._raw(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = Scalar._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __neg__(self):
        return Scalar._raw(-self.re, -self.im)

    def __mul__(self, other):
        other = Scalar._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b and not d:  # rational fast path
            return Scalar._raw(a * c, _FRACTION_ZERO)
        return Scalar._raw(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        if not self.im:
            return Scalar._raw(1 / self.re, _FRACTION_ZERO)
        n = self.re * self.re + self.im * self.im
        return Scalar._raw(self.re / n, -self.im / n)

    def __truediv__(self, other):
        other = Scalar._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            raise DivisionByZero("division by zero")
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = Scalar._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def conjugate(self) -> "Scalar":
        return Scalar._raw(self.re, -self.im)

    # -- equality / hashing ----------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.re == other and not self.im
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self) -> str:
        return f"Scalar({format_scalar(self)!r})"


ZERO = Scalar(0)
ONE = Scalar(1)
IMAG = Scalar(0, 1)


@dataclass(frozen=True)
class FieldSpec:
    """Ambient field with involution and form sign.

    Only the three normalized (sigma, epsilon) combinations are accepted,
    and conjugation requires the Gaussian rationals.
    """

    base: Base
    sigma: Involution
    epsilon: Epsilon

    def __post_init__(self):
        if self.sigma is Involution.CONJUGATION and self.base is not Base.GAUSSIAN_RATIONALS:
            raise InadmissibleParameters(
                "conjugation requires the Gaussian rationals"
            )
        if (self.sigma, self.epsilon) == (Involution.CONJUGATION, Epsilon.MINUS):
            raise InadmissibleParameters(
                "(conjugation, minus) is not one of the normalized form types"
            )

    @property
    def is_alternating(self) -> bool:
        return self.epsilon is Epsilon.MINUS

    @property
    def is_hermitian(self) -> bool:
        return self.sigma is Involution.CONJUGATION

    @property
    def is_gaussian(self) -> bool:
        return self.base is Base.GAUSSIAN_RATIONALS

    def check_scalar(self, x: Scalar) -> Scalar:
        """Validate that ``x`` lives in this field (rationals force im = 0)."""
        if self.base is Base.RATIONALS and x.im:
            raise InadmissibleParameters(
                f"{format_scalar(x)} has an imaginary part but the base field "
                "is the rationals"
            )
        return x


def apply_sigma(spec: FieldSpec, x: Scalar) -> Scalar:
    """Apply the involution: identity, or negation of the imaginary part."""
    if spec.sigma is Involution.IDENTITY:
        return x
    return x.conjugate()


def epsilon_scalar(spec: FieldSpec) -> Scalar:
    """The sign epsilon as a scalar: Plus -> 1, Minus -> -1."""
    return ONE if spec.epsilon is Epsilon.PLUS else Scalar(-1)


# -- string form ----------------------------------------------------------
#
# Canonical serialization used in all JSON output: "p/q" for rationals
# (plain "p" when the denominator is 1) and "p/q+r/s*i" / "p/q-r/s*i" when
# the imaginary part is nonzero.

_SCALAR_RE = _re.compile(
    r"^(?P<re>-?\d+(?:/\d+)?)(?:(?P<sign>[+-])(?P<im>\d+(?:/\d+)?)\*i)?$"
)


def format_scalar(x: Scalar) -> str:
    if not x.im:
        return str(x.re)
    sign = "+" if x.im > 0 else "-"
    return f"{x.re}{sign}{abs(x.im)}*i"


def parse_scalar(text: str) -> Scalar:
    m = _SCALAR_RE.match(text.strip())
    if m is None:
        raise ValueError(f"not a scalar literal: {text!r}")
    re_part = Fraction(m.group("re"))
    if m.group("im") is None:
        return Scalar(re_part)
    im_part = Fraction(m.group("im"))
    if m.group("sign") == "-":
        im_part = -im_part
    return Scalar(re_part, im_part)


def random_scalar(
    spec: FieldSpec, rng: Random, bound: int = 9, nonzero: bool = False
) -> Scalar:
    """A scalar with integer parts drawn uniformly from [-bound, bound]."""
    while True:
        re_part = rng.randrange(-bound, bound + 1)
        im_part = rng.randrange(-bound, bound + 1) if spec.is_gaussian else 0
        x = Scalar(re_part, im_part)
        if not nonzero or x:
            return x
