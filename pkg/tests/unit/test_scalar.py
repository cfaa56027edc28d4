"""
Unit tests for the scalar backends.
"""

import math
from fractions import Fraction

import pytest

from vandermonde_approx.errors import BackendMismatchError, ScalarError, ZeroDivisionScalarError
from vandermonde_approx.scalar import (
    Backend,
    add,
    as_backend,
    backend_of,
    coerce,
    compare,
    div,
    format_scalar,
    mul,
    parse_scalar,
    rational,
    to_float,
)


class TestRationals:
    """Tests for exact construction and arithmetic."""

    def test_rational_normalizes(self):
        """Test that rationals are reduced to lowest terms."""
        assert rational(2, 4) == Fraction(1, 2)
        assert rational(-6, 3) == Fraction(-2)

    def test_zero_denominator_rejected(self):
        """Test that a zero denominator raises a scalar error."""
        with pytest.raises(ScalarError):
            rational(1, 0)

    def test_exact_arithmetic_stays_exact(self):
        """Test that field operations on rationals return rationals."""
        result = add(mul(Fraction(1, 3), Fraction(3, 4)), Fraction(1, 4))
        assert result == Fraction(1, 2)
        assert backend_of(result) is Backend.EXACT

    def test_division_by_zero(self):
        """Test that exact division by zero raises the dedicated error."""
        with pytest.raises(ZeroDivisionScalarError):
            div(Fraction(1), Fraction(0))


class TestBackendMixing:
    """Tests that the two backends never mix silently."""

    def test_mixed_addition_rejected(self):
        """Test that adding a float to a rational raises."""
        with pytest.raises(BackendMismatchError):
            add(Fraction(1, 2), 0.5)

    def test_mixed_comparison_rejected(self):
        """Test that comparing across backends raises."""
        with pytest.raises(BackendMismatchError):
            compare(Fraction(1), 1.0)

    def test_float_never_promoted_to_exact(self):
        """Test that coercing a float to the exact backend raises."""
        with pytest.raises(BackendMismatchError):
            coerce(0.5, Backend.EXACT)

    def test_booleans_are_not_scalars(self):
        """Test that booleans are rejected by coerce."""
        with pytest.raises(ScalarError):
            coerce(True, Backend.EXACT)

    def test_ints_and_strings_coerce_to_both_backends(self):
        """Test that ints and strings are accepted by either backend."""
        assert as_backend([1, "1/2"], Backend.EXACT) == (Fraction(1), Fraction(1, 2))
        assert as_backend([1, "1/2"], Backend.FLOAT) == (1.0, 0.5)


class TestParsing:
    """Tests for scalar text parsing and formatting."""

    def test_decimals_are_read_exactly(self):
        """Test that decimal text is an exact rational on the exact backend."""
        assert parse_scalar("0.96") == Fraction(24, 25)
        assert parse_scalar("-.2") == Fraction(-1, 5)

    def test_fraction_text_rounds_once_on_float(self):
        """Test that p/q text becomes the nearest float."""
        assert parse_scalar("1/3", Backend.FLOAT) == 1 / 3

    def test_float_text_on_float_backend(self):
        """Test that exponent notation parses on the float backend."""
        assert parse_scalar("1e-3", Backend.FLOAT) == 0.001

    @pytest.mark.parametrize("text", ["", "   ", "abc", "1/0", "1//2"])
    def test_malformed_text(self, text):
        """Test that malformed scalar text raises a scalar error."""
        with pytest.raises(ScalarError):
            parse_scalar(text)

    def test_format_rational(self):
        """Test that rationals print as p/q or p."""
        assert format_scalar(Fraction(-10, 9)) == "-10/9"
        assert format_scalar(Fraction(4)) == "4"

    def test_format_float_round_trips(self):
        """Test that floats print as their shortest round-trip text."""
        assert format_scalar(0.1) == "0.1"
        assert float(format_scalar(1 / 3)) == 1 / 3

    def test_to_float_overflow_is_infinite(self):
        """Test that huge rationals convert to signed infinity."""
        assert to_float(Fraction(10 ** 400)) == math.inf
        assert to_float(Fraction(-(10 ** 400))) == -math.inf
