"""Tests for the element-subset chain complex."""

import itertools
import math

import pytest

from formed.delta import (
    Permutation,
    alpha,
    chain_face,
    chains,
    comparable,
    decode_chain,
    encode_chain,
    epsilon,
    eta_indices,
    filtration,
    iota,
    is_chain,
    less,
    level,
    opposite,
    phi,
    pi_indices,
    relative_star,
    sgn,
    star,
    top_chains,
    vertex_key,
    vertices,
)
from formed.errors import HypothesisViolated, InadmissibleParameters, IndexOutOfRange


def fs(*xs):
    return frozenset(xs)


def top_count_oracle(n):
    """Independent count of top chains: T(n) = n*T(n-1) + 1, T(0) = 1."""
    total = 1
    for size in range(1, n + 1):
        total = size * total + 1
    return total


class TestVertices:
    def test_singleton_ground(self):
        assert vertices([0]) == [0, fs(), fs(0)]

    def test_two_element_ground(self):
        got = vertices([0, 1])
        assert got == [0, 1, fs(), fs(0), fs(1), fs(0, 1)]

    def test_empty_ground(self):
        assert vertices([]) == [fs()]

    def test_count(self):
        for n in range(6):
            assert len(vertices(range(n))) == n + 2**n

    def test_levels(self):
        assert level(3) == 0
        assert level(fs()) == 0
        assert level(fs(0, 2, 5)) == 3

    def test_filtration_level_one(self):
        assert filtration([0, 1], 1) == [0, 1, fs(), fs(0), fs(1)]

    def test_filtration_negative_level(self):
        with pytest.raises(IndexOutOfRange):
            filtration([0, 1], -1)

    def test_bad_ground(self):
        with pytest.raises(InadmissibleParameters):
            vertices([0, 0])
        with pytest.raises(InadmissibleParameters):
            vertices(["a"])


class TestLess:
    def test_element_below_subset_is_membership(self):
        assert not less(1, fs(0, 2))
        assert less(0, fs(0, 2))
        assert less(fs(0, 2), fs(0, 1, 2))
        assert less(fs(), fs(0))

    def test_subset_never_below_element(self):
        assert not less(fs(0), 0)
        assert not less(fs(), 5)

    def test_irreflexive_and_antisymmetric(self):
        verts = vertices(range(3))
        for a in verts:
            assert not less(a, a)
            for b in verts:
                assert not (less(a, b) and less(b, a))

    def test_not_transitive(self):
        # 0 < 1 and 1 < {1, 2}, yet 0 is not below {1, 2}.
        assert less(0, 1) and less(1, fs(1, 2)) and not less(0, fs(1, 2))

    def test_chain_needs_pairwise_check(self):
        assert is_chain((0, 2, fs(0, 2), fs(0, 1, 2)))
        assert not is_chain((0, 1, 2, fs(0, 2)))


class TestChains:
    def test_dimension_one_singleton(self):
        assert chains([0], 1) == [(0, fs(0)), (fs(), fs(0))]

    def test_top_of_two_elements(self):
        expected = [
            (0, 1, fs(0, 1)),
            (0, fs(0), fs(0, 1)),
            (1, fs(1), fs(0, 1)),
            (fs(), fs(0), fs(0, 1)),
            (fs(), fs(1), fs(0, 1)),
        ]
        assert chains([0, 1], 2) == expected

    @pytest.mark.parametrize("n", range(7))
    def test_top_chain_counts_match_recurrence(self, n):
        assert len(top_chains(range(n))) == top_count_oracle(n)

    def test_counts_depend_only_on_ground_size(self):
        assert len(top_chains([2, 5, 9])) == top_count_oracle(3)

    def test_all_enumerated_chains_are_valid(self):
        for n in range(5):
            ground = range(n)
            for m in range(n + 1):
                batch = chains(ground, m)
                assert len(batch) == len(set(batch))
                for chain in batch:
                    assert len(chain) == m + 1
                    assert is_chain(chain)

    def test_enumeration_is_sorted(self):
        for m in range(4):
            batch = chains(range(3), m)
            keys = [tuple(vertex_key(v) for v in c) for c in batch]
            assert keys == sorted(keys)

    def test_dimension_out_of_range(self):
        with pytest.raises(IndexOutOfRange):
            chains(range(3), 4)
        with pytest.raises(IndexOutOfRange):
            chains(range(3), -1)


class TestFaces:
    def test_deletion_example(self):
        chain = (0, 2, fs(0, 2), fs(0, 1, 2))
        assert chain_face(chain, 1) == (0, fs(0, 2), fs(0, 1, 2))

    def test_face_identities(self):
        # delta_i . delta_j = delta_{j-1} . delta_i for i < j.
        for n in range(4):
            for m in range(n + 1):
                for chain in chains(range(n), m):
                    for j in range(1, len(chain)):
                        for i in range(j):
                            left = chain_face(chain_face(chain, j), i)
                            right = chain_face(chain_face(chain, i), j - 1)
                            assert left == right

    def test_top_face_drops_ground_set(self):
        for chain in top_chains(range(3)):
            assert chain_face(chain, len(chain) - 1) == chain[:-1]

    def test_index_out_of_range(self):
        with pytest.raises(IndexOutOfRange):
            chain_face((0, fs(0)), 2)
        with pytest.raises(IndexOutOfRange):
            chain_face((0, fs(0)), -1)


class TestOpposite:
    def test_worked_example(self):
        chain = (0, fs(0), fs(0, 1), fs(0, 1, 2))
        other0, m0, op0 = opposite(chain, 0)
        assert (op0, m0) == (fs(), 0)
        assert other0 == (fs(), fs(0), fs(0, 1), fs(0, 1, 2))
        other1, m1, op1 = opposite(chain, 1)
        assert (op1, m1) == (1, 1)
        assert other1 == (0, 1, fs(0, 1), fs(0, 1, 2))
        other2, m2, op2 = opposite(chain, 2)
        assert (op2, m2) == (fs(0, 2), 2)
        assert other2 == (0, fs(0), fs(0, 2), fs(0, 1, 2))

    def test_element_drop_direction(self):
        chain = (0, 1, fs(0, 1))
        other, m, op = opposite(chain, 1)
        assert other == (0, fs(0), fs(0, 1))
        assert m == 1
        assert op == fs(0)

    def test_smallest_subset_drop_can_reposition(self):
        # Dropping {1} from 1 < {1} < {0,1} brings in the element 0, which
        # lands *before* 1: the replacement index is not the deleted one.
        chain = (1, fs(1), fs(0, 1))
        other, m, op = opposite(chain, 1)
        assert other == (0, 1, fs(0, 1))
        assert m == 0
        assert op == 0

    def test_shared_face_and_involution(self):
        for n in range(1, 5):
            for chain in top_chains(range(n)):
                for j in range(len(chain) - 1):
                    other, m, op = opposite(chain, j)
                    assert is_chain(other)
                    assert other[m] == op
                    assert chain_face(chain, j) == chain_face(other, m)
                    assert not comparable(chain[j], op)
                    back, back_m, back_op = opposite(other, m)
                    assert back == chain and back_m == j and back_op == chain[j]

    def test_interior_faces_have_exactly_two_cofaces(self):
        for n in range(1, 5):
            tops = top_chains(range(n))
            cofaces = {}
            for chain in tops:
                for j in range(len(chain)):
                    cofaces.setdefault(chain_face(chain, j), []).append(chain)
            for face, owners in cofaces.items():
                assert len(owners) <= 2
                if face[-1] == frozenset(range(n)):
                    pass  # interior face
                else:
                    assert len(owners) == 1  # dropping the ground set

    def test_top_face_determines_chain(self):
        for n in range(1, 5):
            seen = {}
            for chain in top_chains(range(n)):
                base = chain_face(chain, len(chain) - 1)
                assert base not in seen
                seen[base] = chain

    def test_bad_inputs(self):
        with pytest.raises(IndexOutOfRange):
            opposite((0, fs(0)), 1)  # only j = 0 is interior
        with pytest.raises(HypothesisViolated):
            opposite((0, fs(0, 1)), 0)  # not top-dimensional


class TestStars:
    def test_star_of_worked_example(self):
        chain = (0, fs(0), fs(0, 1), fs(0, 1, 2))
        got = star(chain)
        assert set(got) == {0, fs(), fs(0), 1, fs(0, 1), fs(0, 2), fs(0, 1, 2)}
        assert len(got) == 7

    def test_relative_star_of_worked_example(self):
        base = (0, fs(0), fs(0, 1))
        got = relative_star([0, 1, 2], base)
        assert set(got) == {0, fs(), fs(0), 1, fs(0, 1), fs(0, 2)}
        assert len(got) == 6

    def test_small_star(self):
        assert set(star((fs(), fs(0)))) == {fs(), 0, fs(0)}

    def test_star_sizes(self):
        for n in range(5):
            for chain in top_chains(range(n)):
                assert len(star(chain)) == 2 * n + 1
                if n >= 1:
                    assert len(relative_star(range(n), chain[:-1])) == 2 * n

    def test_relative_star_rejects_bad_base(self):
        with pytest.raises(HypothesisViolated):
            relative_star([0, 1], (0, fs(0), fs(0, 1)))  # already contains ground
        with pytest.raises(HypothesisViolated):
            relative_star([0, 1], (1, fs(0)))  # not a chain after completion


class TestSigns:
    def test_two_point_anchors(self):
        assert sgn((fs(), fs(0))) == 1
        assert sgn((0, fs(0))) == -1

    def test_five_term_anchors(self):
        expected = {
            (0, 1, fs(0, 1)): 1,
            (0, fs(0), fs(0, 1)): -1,
            (fs(), fs(0), fs(0, 1)): 1,
            (fs(), fs(1), fs(0, 1)): -1,
            (1, fs(1), fs(0, 1)): 1,
        }
        for chain, value in expected.items():
            assert sgn(chain) == value

    def test_phi_lands_on_flags(self):
        for n in range(1, 5):
            for chain in top_chains(range(n)):
                flag = phi(chain)
                assert is_chain(flag)
                assert flag[0] == fs()
                assert all(isinstance(v, frozenset) for v in flag)
                assert flag[-1] == chain[-1]

    def test_phi_fixes_flags(self):
        flag = (fs(), fs(1), fs(0, 1))
        assert phi(flag) == flag

    def test_alpha_straightens_the_flag(self):
        for n in range(1, 5):
            for chain in top_chains(range(n)):
                flag = phi(chain)
                perm = alpha(flag)
                relabeled = tuple(
                    frozenset(perm(x) for x in part) for part in flag
                )
                standard = tuple(frozenset(range(t)) for t in range(n + 1))
                assert relabeled == standard

    def test_flag_count_and_transitivity(self):
        for n in range(1, 4):
            flags = [c for c in top_chains(range(n)) if c[0] == fs()]
            assert len(flags) == math.factorial(n)
            standard = tuple(frozenset(range(t)) for t in range(n + 1))
            orbit = set()
            for images in itertools.permutations(range(n)):
                perm = Permutation(images)
                orbit.add(tuple(frozenset(perm(x) for x in part) for part in standard))
            assert orbit == set(flags)

    def test_sign_works_over_relabeled_ground(self):
        # Ranks, not raw values, drive the permutation sign.
        assert sgn((fs(), fs(7), fs(3, 7))) == -1
        assert sgn((3, fs(3), fs(3, 7))) == -1

    def test_interior_flip_alternates_sign(self):
        for n in range(1, 5):
            for chain in top_chains(range(n)):
                for j in range(len(chain) - 1):
                    other, m, _ = opposite(chain, j)
                    assert (-1) ** j * sgn(chain) + (-1) ** m * sgn(other) == 0

    def test_permutation_basics(self):
        perm = Permutation([2, 0, 1])
        assert perm.sign() == 1
        assert perm.inverse().images == (1, 2, 0)
        assert Permutation([1, 0]).sign() == -1
        with pytest.raises(InadmissibleParameters):
            Permutation([0, 0])


class TestVertexMaps:
    def test_iota_example(self):
        got = iota(0, 1)
        assert got == {0: 1, fs(): fs(), fs(0): fs(1)}

    def test_iota_preserves_order(self):
        for l in range(4):
            for i in range(l + 1):
                mapping = iota(i, l)
                verts = list(mapping)
                for a in verts:
                    assert level(mapping[a]) == level(a)
                    for b in verts:
                        assert less(a, b) == less(mapping[a], mapping[b])

    def test_epsilon_is_a_bijection_with_inverse(self):
        for l in range(1, 5):
            for m in range(l + 1):
                for i in range(l):
                    mapping = epsilon(i, l, m)
                    assert len(set(mapping.values())) == len(mapping)
                    ground = sorted(set(range(l + 1)) - {i})
                    assert sorted(mapping.values(), key=vertex_key) == filtration(
                        ground, m
                    )
                    inverse = {v: k for k, v in mapping.items()}
                    assert all(inverse[mapping[k]] == k for k in mapping)

    def test_index_bounds(self):
        with pytest.raises(IndexOutOfRange):
            iota(3, 2)
        with pytest.raises(IndexOutOfRange):
            epsilon(2, 2, 1)

    def test_projection_indices(self):
        ground = [0, 1, 2]
        small = filtration(ground, 1)
        large = filtration(ground, 2)
        positions = pi_indices(ground, 1)
        assert [large[p] for p in positions] == small

    def test_inclusion_indices(self):
        sub = [0, 2]
        ground = [0, 1, 2]
        small = filtration(sub, 1)
        large = filtration(ground, 1)
        positions = eta_indices(sub, ground, 1)
        assert [large[p] for p in positions] == small
        with pytest.raises(InadmissibleParameters):
            eta_indices([0, 3], ground, 1)


class TestEncoding:
    def test_round_trip(self):
        chain = (0, fs(0), fs(0, 2), fs(0, 1, 2))
        encoded = encode_chain(chain)
        assert encoded == [0, [0], [0, 2], [0, 1, 2]]
        assert decode_chain(encoded) == chain

    def test_rejects_garbage(self):
        with pytest.raises(InadmissibleParameters):
            decode_chain("nope")
        with pytest.raises(InadmissibleParameters):
            decode_chain([1.5])
