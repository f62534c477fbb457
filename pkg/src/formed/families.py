"""Catalog of the classical families of formed-space isometry groups.

Each family fixes a base field model, an involution, a form sign, and an
anisotropic-dimension parameter ``d``; its ``r``-th member acts on the
standard formed space of rank ``r``.  The complex-field families are
modeled over the Gaussian rationals and the real ones over the
rationals, which suffices for every exact verification in this package.

Determinant-one variants reuse the ranges of their parent families; the
ones whose form is symmetric over the identity involution additionally
require ``d`` to be odd to be covered, which is enforced here.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InadmissibleParameters
from .scalars import Base, Epsilon, FieldSpec, Involution

SYMPLECTIC = FieldSpec(Base.RATIONALS, Involution.IDENTITY, Epsilon.MINUS)
SYMMETRIC_RATIONAL = FieldSpec(Base.RATIONALS, Involution.IDENTITY, Epsilon.PLUS)
SYMMETRIC_GAUSSIAN = FieldSpec(
    Base.GAUSSIAN_RATIONALS, Involution.IDENTITY, Epsilon.PLUS
)
HERMITIAN = FieldSpec(Base.GAUSSIAN_RATIONALS, Involution.CONJUGATION, Epsilon.PLUS)


@dataclass(frozen=True)
class FamilySpec:
    """One family of the catalog, with its anisotropic parameter fixed."""

    key: str
    name: str
    field_spec: FieldSpec
    d: int
    q0: int
    determinant_one: bool = False


# key -> (catalog name, field spec, fixed d or None, default d, q0, det-one)
_CATALOG = {
    "sp": ("Sp_{2r}(k)", SYMPLECTIC, 0, 0, 2, False),
    "oC0": ("O_{2r}(C)", SYMMETRIC_GAUSSIAN, 0, 0, 2, False),
    "oC1": ("O_{2r+1}(C)", SYMMETRIC_GAUSSIAN, 1, 1, 2, False),
    "oR": ("O(d+r,r)", SYMMETRIC_RATIONAL, None, 0, 1, False),
    "u": ("U(d+r,r)", HERMITIAN, None, 0, 2, False),
    "soC": ("SO_{2r+1}(C)", SYMMETRIC_GAUSSIAN, 1, 1, 2, True),
    "soR": ("SO(d+r,r)", SYMMETRIC_RATIONAL, None, 1, 1, True),
    "su": ("SU(d+r,r)", HERMITIAN, None, 0, 2, True),
}

FAMILY_KEYS = tuple(_CATALOG)


def family(key: str, d: int | None = None) -> FamilySpec:
    """Look up a catalog entry, filling in or validating ``d``.

    Families with a fixed anisotropic dimension reject any other value;
    determinant-one families over a symmetric identity-involution form
    require ``d`` odd.
    """
    if key not in _CATALOG:
        raise InadmissibleParameters(
            f"unknown family {key!r}; choose one of {', '.join(_CATALOG)}"
        )
    name, field_spec, fixed_d, default_d, q0, det_one = _CATALOG[key]
    if d is None:
        d = fixed_d if fixed_d is not None else default_d
    if d < 0:
        raise InadmissibleParameters("anisotropic dimension must be nonnegative")
    if fixed_d is not None and d != fixed_d:
        raise InadmissibleParameters(
            f"family {key!r} has anisotropic dimension {fixed_d}, got {d}"
        )
    if (
        det_one
        and field_spec.sigma is Involution.IDENTITY
        and field_spec.epsilon is Epsilon.PLUS
        and d % 2 == 0
    ):
        raise InadmissibleParameters(
            f"family {key!r} requires an odd anisotropic dimension, got {d}"
        )
    return FamilySpec(
        key=key,
        name=name,
        field_spec=field_spec,
        d=d,
        q0=q0,
        determinant_one=det_one,
    )


def general_families(max_free_d: int = 2) -> list[FamilySpec]:
    """The five untampered families, with every admissible anisotropic
    dimension up to ``max_free_d`` for the ones where it is free."""
    out = [family("sp"), family("oC0"), family("oC1")]
    for key in ("oR", "u"):
        out.extend(family(key, d) for d in range(max_free_d + 1))
    return out
