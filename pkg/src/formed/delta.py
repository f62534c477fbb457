"""Combinatorics of the element-subset chain complex on a finite ordered ground set.

The vertex set is the disjoint union of a finite ground set and its power
set.  A ground element precedes a subset exactly when it belongs to it;
two ground elements compare in the ground order, and two subsets compare
by proper inclusion.  The resulting relation is irreflexive and
antisymmetric but *not* transitive, so chains (totally ordered vertex
tuples) are validated pairwise.

Top-dimensional chains over a ground set of size ``n`` have ``n + 1``
vertices and a rigid normal form: an increasing run of ``k + 1`` ground
elements followed by nested subsets of every cardinality from ``k + 1``
to ``n``, the smallest of which is exactly the set of those elements.
The module provides enumeration, face deletion, opposite-vertex flips
across interior faces, stars, the sign character used by the formal
contracting homotopy, and the order-preserving relabeling maps between
complexes over different ground sets.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Iterator

from .errors import HypothesisViolated, InadmissibleParameters, IndexOutOfRange

# A vertex is either a ground element (int) or a subset of the ground set
# (frozenset of ints).  A chain is a tuple of vertices, strictly
# increasing under `less` in every pair.
Vertex = int | frozenset
Chain = tuple


def is_ground_element(v: Vertex) -> bool:
    """True for element vertices, False for subset vertices."""
    return isinstance(v, int)


def level(v: Vertex) -> int:
    """Filtration level of a vertex: 0 for elements, cardinality for subsets."""
    if isinstance(v, int):
        return 0
    return len(v)


def vertex_key(v: Vertex):
    """Deterministic sort key: elements first (ground order), then subsets
    by cardinality and sorted membership."""
    if isinstance(v, int):
        return (0, (v,))
    return (1, (len(v), tuple(sorted(v))))


def chain_key(chain: Chain):
    """Sort key for chains: the sequence of vertex keys."""
    return tuple(vertex_key(v) for v in chain)


def less(a: Vertex, b: Vertex) -> bool:
    """The order relation: ground order on elements, proper inclusion on
    subsets, and element-below-subset exactly on membership."""
    a_elt = isinstance(a, int)
    b_elt = isinstance(b, int)
    if a_elt and b_elt:
        return a < b
    if a_elt and not b_elt:
        return a in b
    if not a_elt and b_elt:
        return False
    return a < b  # frozenset proper-subset comparison


def comparable(a: Vertex, b: Vertex) -> bool:
    return less(a, b) or less(b, a)


def is_chain(seq: Iterable[Vertex]) -> bool:
    """Whether the vertices are strictly increasing in every pair.

    The pairwise check is required: the relation is not transitive
    (0 < 1 and 1 < {1, 2} hold while 0 < {1, 2} fails).
    """
    verts = tuple(seq)
    return all(
        less(verts[i], verts[j])
        for i in range(len(verts))
        for j in range(i + 1, len(verts))
    )


def _normalize_ground(ground: Iterable[int]) -> tuple[int, ...]:
    items = tuple(ground)
    if not all(isinstance(x, int) for x in items):
        raise InadmissibleParameters("ground set must consist of integers")
    if len(set(items)) != len(items):
        raise InadmissibleParameters("ground set has repeated elements")
    return tuple(sorted(items))


def vertices(ground: Iterable[int]) -> list[Vertex]:
    """All vertices over the ground set: its elements, then its subsets,
    in deterministic key order.  There are ``n + 2**n`` of them."""
    g = _normalize_ground(ground)
    elements: list[Vertex] = list(g)
    subsets: list[Vertex] = [
        frozenset(combo)
        for size in range(len(g) + 1)
        for combo in itertools.combinations(g, size)
    ]
    return elements + subsets


def filtration(ground: Iterable[int], m: int) -> list[Vertex]:
    """The vertices of level at most ``m`` (all elements, and subsets of
    cardinality at most ``m``), in deterministic key order."""
    if m < 0:
        raise IndexOutOfRange(f"filtration level must be nonnegative, got {m}")
    return [v for v in vertices(ground) if level(v) <= m]


def _nested_subset_chains(
    ground: frozenset, lower: frozenset, count: int, strict: bool
) -> Iterator[tuple]:
    """Yield tuples of `count` subsets of `ground`, strictly nested, the
    first containing `lower` (properly if `strict`)."""
    if count == 0:
        yield ()
        return
    rest = sorted(ground - lower)
    min_extra = 1 if strict else 0
    max_size = len(ground) - (count - 1)
    for extra in range(min_extra, len(rest) + 1):
        if len(lower) + extra > max_size:
            break
        for picked in itertools.combinations(rest, extra):
            first = lower | frozenset(picked)
            for tail in _nested_subset_chains(ground, first, count - 1, True):
                yield (first,) + tail


def chains(ground: Iterable[int], m: int) -> list[Chain]:
    """All chains of dimension ``m`` (``m + 1`` vertices), deterministically
    ordered.

    Every chain splits as an increasing run of elements followed by a
    nested run of subsets, each subset containing all the elements, so
    enumeration backtracks over (element run, nested subset completion).
    """
    g = _normalize_ground(ground)
    n = len(g)
    if not 0 <= m <= n:
        raise IndexOutOfRange(f"chain dimension {m} outside [0, {n}]")
    out: list[Chain] = []
    ground_set = frozenset(g)
    for num_elements in range(min(m + 1, n) + 1):
        num_subsets = m + 1 - num_elements
        if num_subsets < 0:
            continue
        for run in itertools.combinations(g, num_elements):
            base = frozenset(run)
            for tail in _nested_subset_chains(ground_set, base, num_subsets, False):
                out.append(run + tail)
    out.sort(key=chain_key)
    return out


def top_chains(ground: Iterable[int]) -> list[Chain]:
    """The top-dimensional chains (dimension = ground size)."""
    g = _normalize_ground(ground)
    return chains(g, len(g))


def chain_face(chain: Chain, i: int) -> Chain:
    """Delete the ``i``-th vertex."""
    verts = tuple(chain)
    if not 0 <= i < len(verts):
        raise IndexOutOfRange(f"face index {i} outside [0, {len(verts) - 1}]")
    return verts[:i] + verts[i + 1 :]


def _split_chain(chain: Chain) -> tuple[tuple, tuple]:
    """Split a chain into its element run and its subset run."""
    verts = tuple(chain)
    cut = 0
    while cut < len(verts) and isinstance(verts[cut], int):
        cut += 1
    return verts[:cut], verts[cut:]


def _require_top(chain: Chain) -> Chain:
    """Validate that the chain is top-dimensional over its own largest
    subset; returns the chain as a tuple.

    A chain of ``n + 1`` vertices whose subsets live inside an ``n``-set
    is automatically in normal form: the subset cardinalities are forced
    to be exactly ``k + 1, ..., n`` with the smallest subset equal to the
    set of the ``k + 1`` run elements.
    """
    verts = tuple(chain)
    if not verts or not isinstance(verts[-1], frozenset):
        raise HypothesisViolated("a top chain ends in its full ground set")
    ground = verts[-1]
    if len(verts) != len(ground) + 1:
        raise HypothesisViolated(
            f"expected {len(ground) + 1} vertices over a ground set of size "
            f"{len(ground)}, got {len(verts)}"
        )
    for v in verts:
        if isinstance(v, int):
            if v not in ground:
                raise HypothesisViolated(f"element {v} is outside the ground set")
        elif not v <= ground:
            raise HypothesisViolated(f"subset {set(v)} is outside the ground set")
    if not is_chain(verts):
        raise HypothesisViolated("vertices are not totally ordered")
    return verts


def opposite(chain: Chain, j: int) -> tuple[Chain, int, Vertex]:
    """Flip a top chain across its ``j``-th interior face.

    For ``j`` strictly below the top index there is exactly one other top
    chain sharing the face obtained by deleting vertex ``j``.  Returns
    ``(other, m, op)`` where deleting vertex ``m`` of ``other`` gives the
    same face and ``op`` is the replacement vertex.  The removed vertex
    and its replacement are never comparable.
    """
    verts = _require_top(chain)
    l = len(verts) - 1
    if not 0 <= j <= l - 1:
        raise IndexOutOfRange(f"interior face index {j} outside [0, {l - 1}]")
    run, subs = _split_chain(verts)
    k = len(run) - 1
    if j <= k:
        # Drop the element run[j]; the remaining k elements regroup with
        # their own span, inserted just below the old smallest subset.
        op = frozenset(run) - {run[j]}
        other = run[:j] + run[j + 1 :] + (op,) + subs
        return other, k, op
    if j == k + 1:
        # Drop the smallest subset; the unique element of the next subset
        # not already in the run joins the run at its ordered position.
        (new_elt,) = subs[1] - subs[0]
        new_run = tuple(sorted(run + (new_elt,)))
        other = new_run + subs[1:]
        return other, new_run.index(new_elt), new_elt
    # Drop an intermediate subset; its neighbors force the replacement.
    op = verts[j - 1] | (verts[j + 1] - verts[j])
    other = verts[:j] + (op,) + verts[j + 1 :]
    return other, j, op


def star(chain: Chain) -> list[Vertex]:
    """The vertices of a top chain together with all its opposite
    vertices: ``2l + 1`` vertices for a chain of dimension ``l``."""
    verts = _require_top(chain)
    seen = set(verts)
    for j in range(len(verts) - 1):
        seen.add(opposite(verts, j)[2])
    return sorted(seen, key=vertex_key)


def relative_star(ground: Iterable[int], base: Chain) -> list[Vertex]:
    """The star of a codimension-one chain missing only the full ground
    set: the star of its unique top coface, with the ground set removed
    (``2l`` vertices)."""
    g = _normalize_ground(ground)
    full = frozenset(g)
    verts = tuple(base)
    if full in verts:
        raise HypothesisViolated("chain already contains the full ground set")
    try:
        top = _require_top(verts + (full,))
    except HypothesisViolated as exc:
        raise HypothesisViolated(
            f"not the last face of a top chain over {sorted(g)}: {exc}"
        ) from None
    return [v for v in star(top) if v != full]


class Permutation:
    """A bijection of ``{0, ..., k}`` with parity sign."""

    __slots__ = ("images",)

    def __init__(self, images: Iterable[int]):
        imgs = tuple(int(x) for x in images)
        if sorted(imgs) != list(range(len(imgs))):
            raise InadmissibleParameters(f"not a bijection of [{len(imgs) - 1}]")
        self.images = imgs

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __len__(self) -> int:
        return len(self.images)

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __repr__(self) -> str:
        return f"Permutation({list(self.images)})"

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i, img in enumerate(self.images):
            inv[img] = i
        return Permutation(inv)

    def sign(self) -> int:
        """Parity: +1 for even permutations, -1 for odd."""
        inversions = sum(
            1
            for i in range(len(self.images))
            for j in range(i + 1, len(self.images))
            if self.images[i] > self.images[j]
        )
        return -1 if inversions % 2 else 1


def phi(chain: Chain) -> Chain:
    """Rewrite a top chain so its least vertex is the empty set.

    The element run ``s_0 < ... < s_k`` is replaced by the flag of its
    proper initial segments (empty set included); the subset run is kept.
    The result is again top-dimensional, with no element vertices.
    """
    verts = _require_top(chain)
    run, subs = _split_chain(verts)
    if not run:
        return verts
    flag = tuple(frozenset(run[:t]) for t in range(len(run)))
    return flag + subs


def alpha(chain: Chain) -> Permutation:
    """The permutation carrying a complete subset flag to the standard one.

    The chain must consist of nested subsets of every cardinality.  Writing
    ``a_t`` for the rank (position in the sorted ground set) of the element
    added at step ``t``, the result maps ``a_t`` to ``t``; applying it to
    every member of every subset yields the flag of initial segments.
    """
    verts = _require_top(chain)
    if any(isinstance(v, int) for v in verts):
        raise HypothesisViolated("flag chains contain no element vertices")
    rank = {g: i for i, g in enumerate(sorted(verts[-1]))}
    images = [0] * (len(verts) - 1)
    for t, (prev, cur) in enumerate(zip(verts, verts[1:])):
        (added,) = cur - prev
        images[rank[added]] = t
    return Permutation(images)


def sgn(chain: Chain) -> int:
    """Sign of a top chain: the parity of its associated flag permutation,
    negated once per element vertex."""
    verts = _require_top(chain)
    run, _ = _split_chain(verts)
    return (-1) ** len(run) * alpha(phi(verts)).sign()


def _shift_map(i: int):
    def shift(j: int) -> int:
        return j if j < i else j + 1

    return shift


def _relabel_vertex(v: Vertex, shift) -> Vertex:
    if isinstance(v, int):
        return shift(v)
    return frozenset(shift(x) for x in v)


def iota(i: int, l: int) -> dict[Vertex, Vertex]:
    """Vertex map induced by the order inclusion of ``{0, .., l-1}`` onto
    ``{0, .., l}`` minus ``i``: the ``i``-th coface relabeling."""
    if not 0 <= i <= l:
        raise IndexOutOfRange(f"coface index {i} outside [0, {l}]")
    shift = _shift_map(i)
    return {v: _relabel_vertex(v, shift) for v in vertices(range(l))}


def epsilon(i: int, l: int, m: int) -> dict[Vertex, Vertex]:
    """Level-preserving bijection of filtration-``m`` vertices induced by
    the order bijection of ``{0, .., l-1}`` onto ``{0, .., l}`` minus ``i``."""
    if not 0 <= i <= l - 1:
        raise IndexOutOfRange(f"relabeling index {i} outside [0, {l - 1}]")
    shift = _shift_map(i)
    return {v: _relabel_vertex(v, shift) for v in filtration(range(l), m)}


def pi_indices(ground: Iterable[int], m: int) -> list[int]:
    """Positions of the level-``m`` filtration inside the level-``m+1``
    one: entry ``t`` is the index of the ``t``-th vertex of the smaller
    filtration in the larger."""
    target = {v: idx for idx, v in enumerate(filtration(ground, m + 1))}
    return [target[v] for v in filtration(ground, m)]


def eta_indices(sub: Iterable[int], ground: Iterable[int], m: int) -> list[int]:
    """Positions of the filtration over a smaller ground set inside the
    filtration over a larger one containing it."""
    s = set(_normalize_ground(sub))
    g = set(_normalize_ground(ground))
    if not s <= g:
        raise InadmissibleParameters("smaller ground set must sit inside the larger")
    target = {v: idx for idx, v in enumerate(filtration(sorted(g), m))}
    return [target[v] for v in filtration(sorted(s), m)]


def encode_vertex(v: Vertex):
    """JSON encoding: elements as integers, subsets as sorted arrays."""
    if isinstance(v, int):
        return v
    return sorted(v)


def decode_vertex(data) -> Vertex:
    if isinstance(data, int):
        return data
    if isinstance(data, list) and all(isinstance(x, int) for x in data):
        return frozenset(data)
    raise InadmissibleParameters(f"not a vertex encoding: {data!r}")


def encode_chain(chain: Chain) -> list:
    return [encode_vertex(v) for v in chain]


def decode_chain(data) -> Chain:
    if not isinstance(data, list):
        raise InadmissibleParameters(f"not a chain encoding: {data!r}")
    return tuple(decode_vertex(v) for v in data)
