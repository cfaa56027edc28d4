"""
Unit tests for the function registry and named fixtures.
"""

import math
from fractions import Fraction

import pytest

from vandermonde_approx.components.fixtures import (
    LOG1P_TABLE,
    NODE_FIXTURES,
    SINE_TABLE,
    SINE_UNIT_POLYNOMIALS,
    named_nodes,
)
from vandermonde_approx.components.function_registry import (
    known_ids,
    parse_polynomial_id,
    polynomial_handle,
    resolve,
)
from vandermonde_approx.errors import ConfigurationError, ScalarError, UnknownFixtureError, UnknownFunctionError
from vandermonde_approx.models import Polynomial
from vandermonde_approx.scalar import Backend


class TestResolve:
    """Tests for function lookup."""

    def test_registered_functions(self):
        """Test the registered ids and their intervals."""
        assert resolve('abs').exact_capable
        assert resolve('runge').exact_capable
        assert not resolve('sine').exact_capable
        assert resolve('log1p').interval == (Fraction(-3, 4), Fraction(3, 4))
        assert resolve('sine').backend is Backend.FLOAT

    def test_unknown_lists_known_ids(self):
        """Test that an unknown id names the registered ones."""
        with pytest.raises(UnknownFunctionError) as info:
            resolve('cosine')
        message = str(info.value)
        assert "cosine" in message
        for function_id in ('abs', 'sine', 'log1p', 'runge'):
            assert function_id in message

    def test_runge_is_exact(self):
        """Test 1/(1 + 25x^2) on rationals."""
        assert resolve('runge').handle(Fraction(1, 5)) == Fraction(1, 2)

    def test_log1p_domain(self):
        """Test that ln(1+x) rejects x <= -1."""
        with pytest.raises(ValueError):
            resolve('log1p').handle(-1.0)

    def test_domain_on_other_backend(self):
        """Test that an exact interval can be mapped on the float backend."""
        domain = resolve('abs').domain(Backend.FLOAT)
        assert domain.a == -1.0
        assert domain.inverse(0.5) == 0.0

    def test_known_ids_include_polynomials(self):
        """Test that the polynomial id form is advertised."""
        assert any(function_id.startswith("poly:") for function_id in known_ids())


class TestPolynomialIds:
    """Tests for poly:<coefficients> ids."""

    def test_parse(self):
        """Test descending coefficient parsing."""
        assert parse_polynomial_id("poly:1,0,2") == Polynomial.of([1, 0, 2])

    def test_resolve_on_unit_interval(self):
        """Test that polynomials are studied on [0, 1]."""
        spec = resolve("poly:1/2,3")
        assert spec.interval == (Fraction(0), Fraction(1))
        assert spec.handle(Fraction(2)) == 4

    def test_empty_coefficients(self):
        """Test that an empty coefficient list is an unknown id."""
        with pytest.raises(UnknownFunctionError):
            resolve("poly:")

    def test_bad_coefficient(self):
        """Test that a malformed coefficient is a scalar error."""
        with pytest.raises(ScalarError):
            resolve("poly:1,x")

    def test_handle_follows_argument_backend(self):
        """Test exact and float evaluation of the same handle."""
        handle = polynomial_handle(Polynomial.of(["1/2", 0, 1]))
        assert handle(Fraction(2)) == Fraction(3)
        assert isinstance(handle(2.0), float)
        assert handle(2.0) == 3.0


class TestFixtures:
    """Tests for named node sets and printed tables."""

    def test_absolute_value_nodes(self):
        """Test the 19 printed nodes with x_18 = .98."""
        nodes = named_nodes('ex2.6-nodes')
        assert len(nodes) == 19
        assert nodes[17] == Fraction(49, 50)

    def test_symmetric_variant(self):
        """Test that the symmetric variant is closed under negation."""
        nodes = named_nodes('ex2.6-nodes-symmetric')
        assert [-x for x in reversed(nodes.nodes)] == list(nodes.nodes)

    def test_irrational_fixture_is_float_only(self):
        """Test that pi partitions refuse the exact backend."""
        assert NODE_FIXTURES['pi-partition-4'].irrational
        with pytest.raises(ConfigurationError):
            named_nodes('pi-partition-4', Backend.EXACT)
        nodes = named_nodes('pi-partition-4', Backend.FLOAT)
        assert nodes[0] == -math.pi

    def test_log_partition_is_exact(self):
        """Test the exact uniform nodes on [-3/4, 3/4]."""
        assert named_nodes('ln-partition-4').to_list() == ["-3/4", "-3/8", "0", "3/8", "3/4"]

    def test_unknown_fixture(self):
        """Test that unknown fixture ids are listed."""
        with pytest.raises(UnknownFixtureError) as info:
            named_nodes('ex9.9')
        assert 'ex2.7-n6' in str(info.value)

    def test_printed_tables(self):
        """Test the shape of the printed tables."""
        assert SINE_TABLE.rows['P4'][5] == "-"
        assert SINE_TABLE.known_flags == frozenset({('P4', 3)})
        assert LOG1P_TABLE.rows['reference'][5] == "0.02"
        assert set(SINE_UNIT_POLYNOMIALS) == {6, 8}
