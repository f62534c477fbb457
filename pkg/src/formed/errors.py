"""Exception hierarchy shared by every module in the package.

All package-specific failures derive from :class:`FormedError`, so callers
(including the CLI) can catch one type. The leaf classes name the exact
failure mode; none of them carries extra state beyond the message.
"""
from __future__ import annotations


class FormedError(Exception):
    """Base class for all errors raised by this package."""


class InadmissibleParameters(FormedError):
    """Field/involution/sign or (rank, anisotropic) parameters not allowed."""


class DimensionMismatch(FormedError):
    """Operands have incompatible dimensions."""


class DivisionByZero(FormedError):
    """Exact division or inversion by zero."""


class SingularMatrix(FormedError):
    """A matrix that was required to be invertible is singular."""


class NotAnIsometry(FormedError):
    """A map that must preserve the form fails to do so (or is not injective)."""


class DegenerateAmbient(FormedError):
    """An operation requiring a non-degenerate ambient space got a degenerate one."""


class NoIsotropicVectors(FormedError):
    """The space provably contains no nonzero isotropic vector."""


class IndeterminateIsotropy(FormedError):
    """The isotropy search exhausted its budget without a proof either way.

    Only reachable for inputs outside the standard-space surface this
    package guarantees (see ``find_isotropic_vector``); raised instead of
    guessing.
    """


class WittMatchFailure(FormedError):
    """Extension failed to match complementary subspaces exactly.

    Like :class:`IndeterminateIsotropy`, this is only reachable off the
    guaranteed input surface; a raised instance is an honest refusal, never
    a wrong answer.
    """


class HypothesisViolated(FormedError):
    """Inputs do not satisfy the hypotheses the operation requires."""


class IndexOutOfRange(FormedError):
    """An index parameter lies outside its documented range."""


class NotGeneralPosition(FormedError):
    """Simplex points fail the general-position requirement."""


class LengthMismatch(FormedError):
    """Simplices (or tuples) whose lengths must agree do not."""


class UsageError(FormedError):
    """Invalid command-line arguments or flag combinations."""
