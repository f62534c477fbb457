"""Exact scalar arithmetic and the involution."""
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from formed.errors import DivisionByZero, InadmissibleParameters
from formed.scalars import (
    IMAG,
    ONE,
    ZERO,
    Base,
    Epsilon,
    FieldSpec,
    Involution,
    Scalar,
    apply_sigma,
    epsilon_scalar,
    format_scalar,
    parse_scalar,
    random_scalar,
)

SP = FieldSpec(Base.RATIONALS, Involution.IDENTITY, Epsilon.MINUS)
O_R = FieldSpec(Base.RATIONALS, Involution.IDENTITY, Epsilon.PLUS)
O_C = FieldSpec(Base.GAUSSIAN_RATIONALS, Involution.IDENTITY, Epsilon.PLUS)
U = FieldSpec(Base.GAUSSIAN_RATIONALS, Involution.CONJUGATION, Epsilon.PLUS)

ALL_SPECS = [SP, O_R, O_C, U]

rationals = st.fractions(
    min_value=-100, max_value=100, max_denominator=50
)
scalars = st.builds(Scalar, rationals, rationals)


class TestFieldSpec:
    def test_conjugation_needs_gaussian_base(self):
        with pytest.raises(InadmissibleParameters):
            FieldSpec(Base.RATIONALS, Involution.CONJUGATION, Epsilon.PLUS)

    def test_conjugation_minus_rejected(self):
        with pytest.raises(InadmissibleParameters):
            FieldSpec(Base.GAUSSIAN_RATIONALS, Involution.CONJUGATION, Epsilon.MINUS)

    def test_normalized_types_accepted(self):
        for spec in ALL_SPECS:
            assert isinstance(spec, FieldSpec)

    def test_rational_base_rejects_imaginary_scalars(self):
        with pytest.raises(InadmissibleParameters):
            SP.check_scalar(Scalar(1, 2))
        assert O_C.check_scalar(Scalar(1, 2)) == Scalar(1, 2)


class TestSigma:
    def test_conjugation_example(self):
        assert apply_sigma(U, Scalar(3, 2)) == Scalar(3, -2)

    def test_identity_example(self):
        x = Scalar(Fraction(5, 7))
        assert apply_sigma(O_R, x) == x

    def test_sigma_is_an_involution(self):
        rng = random.Random(7)
        for _ in range(100):
            x = random_scalar(U, rng, bound=50)
            assert apply_sigma(U, apply_sigma(U, x)) == x

    def test_sigma_is_additive_and_multiplicative(self):
        rng = random.Random(11)
        for _ in range(1000):
            x = random_scalar(U, rng, bound=30)
            y = random_scalar(U, rng, bound=30)
            assert apply_sigma(U, x * y) == apply_sigma(U, x) * apply_sigma(U, y)
            assert apply_sigma(U, x + y) == apply_sigma(U, x) + apply_sigma(U, y)

    def test_epsilon_times_sigma_epsilon_is_one(self):
        for spec in ALL_SPECS:
            e = epsilon_scalar(spec)
            assert e * apply_sigma(spec, e) == ONE


class TestFieldOps:
    def test_rational_addition(self):
        assert Scalar(Fraction(1, 2)) + Scalar(Fraction(1, 3)) == Scalar(Fraction(5, 6))

    def test_gaussian_multiplication(self):
        assert Scalar(1, 1) * Scalar(1, -1) == Scalar(2)

    def test_inverse_of_two_plus_i(self):
        x = Scalar(2, 1)
        inv = x.inverse()
        # oracle: the defining property, then the expected closed form
        assert x * inv == ONE
        assert inv == Scalar(Fraction(2, 5), Fraction(-1, 5))

    def test_division_by_zero(self):
        with pytest.raises(DivisionByZero):
            ONE / ZERO
        with pytest.raises(DivisionByZero):
            ZERO.inverse()

    def test_imaginary_unit_squares_to_minus_one(self):
        assert IMAG * IMAG == Scalar(-1)

    @given(scalars, scalars, scalars)
    def test_field_axioms(self, x, y, z):
        assert (x + y) + z == x + (y + z)
        assert (x * y) * z == x * (y * z)
        assert x * (y + z) == x * y + x * z
        assert x + y == y + x
        assert x * y == y * x

    @given(scalars)
    def test_additive_and_multiplicative_inverses(self, x):
        assert x + (-x) == ZERO
        if x:
            assert x * x.inverse() == ONE

    def test_int_coercion(self):
        assert Scalar(3) + 1 == Scalar(4)
        assert 2 * Scalar(Fraction(1, 2)) == ONE
        assert Scalar(5) == 5


class TestStringForm:
    @pytest.mark.parametrize(
        "scalar, text",
        [
            (Scalar(5), "5"),
            (Scalar(Fraction(5, 7)), "5/7"),
            (Scalar(Fraction(-3, 2)), "-3/2"),
            (Scalar(3, Fraction(1, 2)), "3+1/2*i"),
            (Scalar(0, -2), "0-2*i"),
        ],
    )
    def test_format(self, scalar, text):
        assert format_scalar(scalar) == text

    @given(scalars)
    def test_round_trip(self, x):
        assert parse_scalar(format_scalar(x)) == x

    def test_parse_rejects_garbage(self):
        with pytest.raises(ValueError):
            parse_scalar("1 + i")


def test_random_scalar_respects_base_and_nonzero():
    rng = random.Random(3)
    for _ in range(50):
        assert random_scalar(SP, rng).im == 0
        assert random_scalar(U, rng, nonzero=True)
