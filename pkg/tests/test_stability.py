"""Tests for the family catalog and the stability range arithmetic."""

import pytest

from formed.errors import InadmissibleParameters
from formed.families import FAMILY_KEYS, family, general_families
from formed.scalars import Base, Epsilon, Involution
from formed.stability import (
    NEG_INFINITY,
    POS_INFINITY,
    ExtInt,
    decide,
    gamma,
    gamma_star,
    gamma_tilde,
    range_report,
    tau,
    tilde_ranges,
)


class TestFamilyCatalog:
    def test_all_keys_build(self):
        assert set(FAMILY_KEYS) == {"sp", "oC0", "oC1", "oR", "u", "soC", "soR", "su"}
        for key in FAMILY_KEYS:
            spec = family(key)
            assert spec.key == key
            assert spec.d >= 0

    def test_initial_condition_thresholds(self):
        assert family("oR").q0 == 1
        assert family("soR").q0 == 1
        for key in ("sp", "oC0", "oC1", "u", "soC", "su"):
            assert family(key).q0 == 2

    def test_field_models(self):
        assert family("sp").field_spec.epsilon is Epsilon.MINUS
        assert family("sp").field_spec.base is Base.RATIONALS
        assert family("u").field_spec.sigma is Involution.CONJUGATION
        assert family("oC0").field_spec.base is Base.GAUSSIAN_RATIONALS
        assert family("oR").field_spec.sigma is Involution.IDENTITY

    def test_fixed_anisotropic_dimensions(self):
        assert family("sp").d == 0
        assert family("oC0").d == 0
        assert family("oC1").d == 1
        assert family("soC").d == 1
        with pytest.raises(InadmissibleParameters):
            family("oC1", d=0)
        with pytest.raises(InadmissibleParameters):
            family("sp", d=1)

    def test_free_anisotropic_dimensions(self):
        assert family("oR", d=2).d == 2
        assert family("u", d=2).d == 2
        with pytest.raises(InadmissibleParameters):
            family("u", d=-1)

    def test_determinant_one_parity_guard(self):
        assert family("soR").d == 1
        assert family("soR", d=3).d == 3
        with pytest.raises(InadmissibleParameters):
            family("soR", d=2)
        # No parity constraint away from symmetric identity-involution forms.
        assert family("su", d=2).d == 2

    def test_determinant_one_flags(self):
        for key in ("soC", "soR", "su"):
            assert family(key).determinant_one
        for key in ("sp", "oC0", "oC1", "oR", "u"):
            assert not family(key).determinant_one

    def test_unknown_key(self):
        with pytest.raises(InadmissibleParameters):
            family("gl")

    def test_general_families_cover_the_sweep(self):
        specs = general_families(2)
        assert len(specs) == 9
        assert {(s.key, s.d) for s in specs} == {
            ("sp", 0),
            ("oC0", 0),
            ("oC1", 1),
            ("oR", 0),
            ("oR", 1),
            ("oR", 2),
            ("u", 0),
            ("u", 1),
            ("u", 2),
        }


class TestExtInt:
    def test_total_order(self):
        values = [NEG_INFINITY, ExtInt(-3), ExtInt(0), ExtInt(7), POS_INFINITY]
        for i, a in enumerate(values):
            for j, b in enumerate(values):
                assert (a < b) == (i < j)
                assert (a <= b) == (i <= j)

    def test_int_interop(self):
        assert ExtInt(4) == 4
        assert ExtInt(4) < 5
        assert NEG_INFINITY < -10**9
        assert POS_INFINITY > 10**9
        assert int(ExtInt(4)) == 4
        with pytest.raises(InadmissibleParameters):
            int(POS_INFINITY)

    def test_saturating_arithmetic(self):
        assert ExtInt(2) + 3 == 5
        assert POS_INFINITY + 100 == POS_INFINITY
        assert NEG_INFINITY - 100 == NEG_INFINITY
        assert POS_INFINITY + POS_INFINITY == POS_INFINITY
        with pytest.raises(InadmissibleParameters):
            POS_INFINITY + NEG_INFINITY

    def test_repr(self):
        assert repr(POS_INFINITY) == "+inf"
        assert repr(NEG_INFINITY) == "-inf"
        assert repr(ExtInt(-2)) == "-2"

    def test_immutable_and_hashable(self):
        with pytest.raises(AttributeError):
            ExtInt(1).value = 2
        assert len({ExtInt(1), ExtInt(1), POS_INFINITY}) == 2


class TestRangeFunctions:
    def test_seed_spot_values(self):
        # Frozen by hand: 2**l plus the round-up of (l+1)/2.
        assert [gamma_star(l) for l in range(7)] == [2, 3, 6, 10, 19, 35, 68]

    def test_seed_strictly_increasing(self):
        assert all(gamma_star(l) < gamma_star(l + 1) for l in range(20))

    def test_seed_rejects_negative(self):
        with pytest.raises(InadmissibleParameters):
            gamma_star(-1)

    def test_gamma_spot_values(self):
        for r in range(5):
            assert gamma(r) == NEG_INFINITY
        assert gamma(5) == 0
        assert gamma(21) == 3

    def test_galois_adjunction(self):
        for l in range(8):
            for r in range(61):
                assert (gamma_star(l) <= r) == (ExtInt(l) <= gamma_tilde(r))

    def test_gamma_tilde_of_empty_window(self):
        assert gamma_tilde(1) == NEG_INFINITY
        assert gamma_tilde(-5) == NEG_INFINITY
        assert gamma_tilde(2) == 0


class TestDecision:
    def test_tau_window_closed_form(self):
        for q0 in (1, 2):
            for q in range(q0 + 1, 9):
                for r in range(0, 60):
                    _, tt = tilde_ranges(q, r, q0)
                    assert tt == r - 2 * q + q0 + 1

    def test_gamma_window_examples(self):
        tg, _ = tilde_ranges(3, 20, 2)
        assert tg == 0
        tg, _ = tilde_ranges(3, 19, 2)
        assert tg == -1

    def test_empty_window_is_stable(self):
        for r in range(0, 30):
            outcome = decide(1, r, 2)
            assert outcome.iso and outcome.inj
            assert outcome.tilde_gamma_qr == POS_INFINITY
            assert outcome.tilde_tau_qr == POS_INFINITY

    def test_threshold_examples(self):
        assert decide(3, 20, 2).iso
        assert not decide(3, 19, 2).iso

    def test_monotone_in_rank(self):
        for q0 in (1, 2):
            for q in range(q0 + 1, 7):
                seen_true = False
                for r in range(0, 160):
                    ok = decide(q, r, q0).iso
                    if seen_true:
                        assert ok
                    seen_true = seen_true or ok

    def test_closed_form_threshold(self):
        for q0 in (1, 2):
            for q in range(q0 + 1, 7):
                for r in range(0, 160):
                    assert decide(q, r, q0).iso == (r >= 2 * gamma_star(q))

    def test_injected_range_functions(self):
        outcome = decide(3, 5, 2, gamma_fn=lambda r: 10, tau_fn=lambda r: 10)
        assert outcome.iso
        outcome = decide(3, 5, 2, gamma_fn=lambda r: 10, tau_fn=lambda r: 3)
        assert not outcome.iso  # tau window gives 3 - 3 = 0, needs >= 1

    def test_default_tau(self):
        assert tau(7) == 6


class TestRangeReport:
    def test_symplectic_table(self):
        report = range_report(family("sp"), 6)
        assert [(row.q, row.r0, row.r1) for row in report.rows] == [
            (3, 20, None),
            (4, 38, 20),
            (5, 70, 38),
            (6, 136, 70),
        ]

    def test_real_orthogonal_table_starts_lower(self):
        report = range_report(family("oR", d=1), 3)
        assert [row.q for row in report.rows] == [2, 3]
        assert report.rows[0].r0 == 2 * gamma_star(2) == 12
        assert report.rows[0].r1 is None
        assert report.rows[1].r1 == 12

    def test_report_matches_decision_procedure(self):
        for key in ("sp", "oR"):
            spec = family(key)
            report = range_report(spec, 6)
            for row in report.rows:
                assert decide(row.q, row.r0, spec.q0).iso
                assert not decide(row.q, row.r0 - 1, spec.q0).iso

    def test_q_max_too_small(self):
        with pytest.raises(InadmissibleParameters):
            range_report(family("sp"), 2)
