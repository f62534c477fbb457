"""Formal verification of the contracting-homotopy identity.

The subdivision operator on level ``l`` is a signed sum of evaluation
pullbacks, one per top chain of the element-subset complex over the
ground set ``{0, ..., l}``.  Because every operator involved is induced
by finitely many vertex-tuple maps, the defining identity

    (subdivision at l+1) after (coordinate collapse)
        + alternating sum of (face relabelings) after (subdivision at l)
        = evaluation at the straight tuple (0, 1, ..., l)

holds exactly when the corresponding signed multiset of label tuples
cancels to a single term.  This module expands both sides over a free
integer module of label tuples and checks that cancellation, which is
the full combinatorial content of the homotopy.
"""

from __future__ import annotations

from typing import Callable, Optional

from . import delta
from .errors import IndexOutOfRange

# A formal sum is a map from label tuples (tuples of vertices of the
# ambient complex) to nonzero integer coefficients.
FormalSum = dict

SgnFn = Callable[[delta.Chain], int]


def add_term(acc: FormalSum, label: tuple, coeff: int) -> None:
    """Accumulate one signed term, dropping exact cancellations."""
    total = acc.get(label, 0) + coeff
    if total:
        acc[label] = total
    else:
        acc.pop(label, None)


def formal_sum(terms) -> FormalSum:
    acc: FormalSum = {}
    for coeff, label in terms:
        add_term(acc, label, coeff)
    return acc


def subtract(left: FormalSum, right: FormalSum) -> FormalSum:
    out = dict(left)
    for label, coeff in right.items():
        add_term(out, label, -coeff)
    return out


def expand_beta(l: int, sgn_fn: Optional[SgnFn] = None) -> list[tuple[int, delta.Chain]]:
    """The subdivision operator on level ``l`` as a list of signed label
    tuples: one term per top chain over ``{0, ..., l}``.

    Level ``-1`` is allowed: over the empty ground set there is exactly
    one top chain, the empty subset alone, with sign ``+1``.
    """
    if l < -1:
        raise IndexOutOfRange(f"subdivision level must be at least -1, got {l}")
    signed = sgn_fn if sgn_fn is not None else delta.sgn
    return [(signed(chain), chain) for chain in delta.top_chains(range(l + 1))]


def expand_identity_sides(
    l: int, sgn_fn: Optional[SgnFn] = None
) -> tuple[FormalSum, FormalSum]:
    """Expand the two sides of the homotopy identity on level ``l``.

    Left side, first block: each top chain ``C`` over ``{0, ..., l}``
    contributes, for every deletion position ``i``, the tuple of its
    vertices with entry ``i`` removed, weighted ``(-1)^i sgn(C)`` --
    deleting a coordinate of the pulled-back configuration is the same as
    deleting a vertex of the chain.

    Left side, second block: for every ``j`` in ``{0, ..., l}``, the
    subdivision over the smaller ground set ``{0, ..., l}`` minus ``j``
    contributes each of its top chains with weight ``(-1)^j`` times its
    sign.  Enumerating that complex directly *is* the order-preserving
    relabeling of the level-``(l-1)`` subdivision, since its vertices are
    already vertices of the ambient complex.

    Right side: the single straight tuple ``(0, 1, ..., l)``.
    """
    if l < 0:
        raise IndexOutOfRange(f"identity level must be nonnegative, got {l}")
    signed = sgn_fn if sgn_fn is not None else delta.sgn
    lhs: FormalSum = {}
    for chain in delta.top_chains(range(l + 1)):
        weight = signed(chain)
        for i in range(len(chain)):
            add_term(lhs, chain[:i] + chain[i + 1 :], (-1) ** i * weight)
    for j in range(l + 1):
        ground = [x for x in range(l + 1) if x != j]
        for chain in delta.top_chains(ground):
            add_term(lhs, chain, (-1) ** j * signed(chain))
    rhs: FormalSum = {tuple(range(l + 1)): 1}
    return lhs, rhs


def verify_homotopy_identity(l: int, sgn_fn: Optional[SgnFn] = None) -> dict:
    """Check the homotopy identity on level ``l`` by exact cancellation.

    Returns the residual (left side minus right side), the two expanded
    sides, the number of raw terms expanded, and whether the residual
    vanishes.
    """
    lhs, rhs = expand_identity_sides(l, sgn_fn)
    residual = subtract(lhs, rhs)
    top_count = len(delta.top_chains(range(l + 1)))
    sub_count = len(delta.top_chains(range(l)))
    raw_terms = top_count * (l + 2) + (l + 1) * sub_count + 1
    return {
        "l": l,
        "ok": not residual,
        "residual": residual,
        "lhs": lhs,
        "rhs": rhs,
        "raw_terms": raw_terms,
    }


def verify_sign_cancellation(l: int, sgn_fn: Optional[SgnFn] = None) -> bool:
    """Check that interior faces cancel in pairs on level ``l``: for every
    top chain ``C`` over ``{0, ..., l}`` and interior position ``j``, the
    unique other chain ``C'`` sharing the ``j``-th face (at position ``m``)
    satisfies ``(-1)^j sgn(C) + (-1)^m sgn(C') = 0``."""
    if l < 1:
        raise IndexOutOfRange(f"cancellation level must be at least 1, got {l}")
    signed = sgn_fn if sgn_fn is not None else delta.sgn
    for chain in delta.top_chains(range(l + 1)):
        for j in range(len(chain) - 1):
            other, m, _ = delta.opposite(chain, j)
            if (-1) ** j * signed(chain) + (-1) ** m * signed(other) != 0:
                return False
    return True


def flipped_sign(*flipped: delta.Chain) -> SgnFn:
    """A sign function agreeing with the canonical one except on the given
    chains, where it is negated.  Used to confirm the verifiers notice
    corrupted signs."""
    bad = set(flipped)

    def signed(chain: delta.Chain) -> int:
        value = delta.sgn(chain)
        return -value if tuple(chain) in bad else value

    return signed


def face_tuples_are_distinct(l: int) -> bool:
    """Whether, for every top chain over ``{0, ..., l}``, the tuples
    obtained by deleting one entry are pairwise distinct.

    Combined with linearity this shows no single sign corruption can slip
    through the identity check: flipping one chain in the first block
    shifts the residual by twice an alternating sum over these distinct
    tuples, and flipping one chain in the second block shifts a single
    coefficient by two.
    """
    for chain in delta.top_chains(range(l + 1)):
        faces = {chain[:i] + chain[i + 1 :] for i in range(len(chain))}
        if len(faces) != len(chain):
            return False
    return True
