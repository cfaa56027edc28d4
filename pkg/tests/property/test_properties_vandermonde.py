"""
Property-based tests for Vandermonde determinants, fits and partitions.
"""

from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from tests.oracles import cofactor_determinant, lagrange_evaluate
from vandermonde_approx.components.grid import dyadic, uniform_partition
from vandermonde_approx.components.interpolation import evaluate, fit
from vandermonde_approx.components.vandermonde import (
    NodeSystem,
    build_ascending,
    build_descending,
    det_elimination,
    det_inductive,
    det_product,
    invert,
    permute_columns,
    permute_rows,
    permute_vector,
    sign_relation,
    solve,
)
from vandermonde_approx.models import NodeVector, Permutation, SampleSet, SquareMatrix
from vandermonde_approx.scalar import Backend

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=12)


def node_vectors(min_size=1, max_size=12):
    return st.lists(rationals, min_size=min_size, max_size=max_size, unique=True).map(
        lambda values: NodeVector(tuple(sorted(values)), Backend.EXACT)
    )


@st.composite
def systems(draw, max_size=8):
    """Exact nodes with one rational value per node."""
    nodes = draw(node_vectors(max_size=max_size))
    values = draw(st.lists(rationals, min_size=len(nodes), max_size=len(nodes)))
    return SampleSet(nodes, tuple(values))


@st.composite
def permuted_systems(draw):
    samples = draw(systems())
    permutation = draw(st.permutations(list(range(len(samples)))))
    return samples, Permutation(tuple(permutation))


@st.composite
def float_node_vectors(draw, max_order=12, jitter=0.3):
    """Float nodes from -1 to 1, interior nodes shifted off the equispaced grid by up to jitter spacings."""
    order = draw(st.integers(min_value=2, max_value=max_order))
    spacing = 2.0 / (order - 1)
    shifts = draw(st.lists(
        st.floats(min_value=-jitter, max_value=jitter), min_size=order - 2, max_size=order - 2,
    ))
    interior = [-1.0 + (index + 1 + shift) * spacing for index, shift in enumerate(shifts)]
    return NodeVector(tuple([-1.0] + interior + [1.0]), Backend.FLOAT)


def coefficient_norm(polynomial):
    """sum |a_k|, which bounds every |term| Horner's rule combines on [-1, 1]."""
    return sum(abs(float(c)) for c in polynomial.coefficients)


class TestDeterminantProperties:
    """Properties of the three determinant computations."""

    @settings(max_examples=500)
    @given(node_vectors(min_size=2, max_size=12))
    def test_product_and_elimination_agree(self, nodes):
        """Test Det(B) = product and Det(A) = sign * product."""
        product = det_product(nodes)
        assert det_elimination(build_ascending(nodes)) == product
        assert det_elimination(build_descending(nodes)) == sign_relation(len(nodes)) * product
        assert det_inductive(nodes) == product

    @settings(max_examples=50)
    @given(node_vectors(min_size=1, max_size=6))
    def test_elimination_matches_cofactor_expansion(self, nodes):
        """Test elimination against Laplace expansion."""
        matrix = build_descending(nodes)
        assert det_elimination(matrix) == cofactor_determinant([list(row) for row in matrix.entries])

    @settings(max_examples=100)
    @given(node_vectors(min_size=2), st.data())
    def test_swapping_two_nodes_flips_the_product(self, nodes, data):
        """Test that exchanging two nodes negates the product formula."""
        i = data.draw(st.integers(min_value=0, max_value=len(nodes) - 2))
        j = data.draw(st.integers(min_value=i + 1, max_value=len(nodes) - 1))
        swapped = list(nodes)
        swapped[i], swapped[j] = swapped[j], swapped[i]
        assert det_product(swapped) == -det_product(nodes)

    @settings(max_examples=100)
    @given(node_vectors())
    def test_distinct_nodes_are_nonsingular(self, nodes):
        """Test that distinct nodes never give a zero determinant."""
        assert det_product(nodes) != 0


class TestFitProperties:
    """Properties of exact interpolation."""

    @settings(max_examples=200)
    @given(systems(), st.lists(rationals, min_size=50, max_size=50))
    def test_fit_matches_lagrange(self, samples, points):
        """Test that the fitted polynomial equals the Lagrange interpolant at 50 points."""
        polynomial = fit(samples)
        for x in points:
            assert evaluate(polynomial, x) == lagrange_evaluate(samples.nodes.nodes, samples.values, x)

    @settings(max_examples=100)
    @given(systems())
    def test_fit_is_node_exact(self, samples):
        """Test P(x_i) = b_i at every node."""
        polynomial = fit(samples)
        assert all(evaluate(polynomial, x) == b for x, b in samples.pairs())

    @settings(max_examples=100)
    @given(systems())
    def test_inverse_route_matches_solve(self, samples):
        """Test A^-1 . b against the direct solve."""
        system = NodeSystem(samples.nodes)
        assert system.fit(samples.values) == fit(samples)

    @settings(max_examples=50)
    @given(node_vectors(max_size=8))
    def test_inverse_is_two_sided(self, nodes):
        """Test A . A^-1 = A^-1 . A = I."""
        matrix = build_descending(nodes)
        inverse = invert(matrix)
        assert matrix.matmul(inverse) == inverse.matmul(matrix)
        assert all(
            value == (1 if i == j else 0)
            for i, row in enumerate(matrix.matmul(inverse).entries)
            for j, value in enumerate(row)
        )

    @settings(max_examples=100)
    @given(
        st.integers(min_value=1, max_value=10),
        st.lists(rationals, min_size=1, max_size=5),
        st.integers(min_value=1, max_value=4),
    )
    def test_odd_data_on_symmetric_nodes_gives_odd_fit(self, segments, odd_coefficients, half_width):
        """Test that even powers vanish exactly for odd functions on symmetric nodes."""
        def f(x):
            return sum(c * x ** (2 * k + 1) for k, c in enumerate(odd_coefficients))

        nodes = uniform_partition(-half_width, half_width, segments)
        polynomial = fit(SampleSet(nodes, tuple(f(x) for x in nodes)))
        for power in range(0, polynomial.declared_degree + 1, 2):
            assert polynomial.coefficient(power) == 0

    @settings(max_examples=200)
    @given(float_node_vectors(max_order=12), st.data())
    def test_float_fit_matches_lagrange(self, nodes, data):
        """Test float fits against the Lagrange oracle at 50 points, relative to the coefficient size."""
        values = data.draw(st.lists(
            st.floats(min_value=-10, max_value=10, allow_nan=False),
            min_size=len(nodes), max_size=len(nodes),
        ))
        points = data.draw(st.lists(
            st.floats(min_value=-1, max_value=1, allow_nan=False), min_size=50, max_size=50,
        ))
        polynomial = fit(SampleSet(nodes, tuple(values)))
        for x in points:
            scale = max(1.0, max(abs(v) for v in values), coefficient_norm(polynomial))
            assert abs(evaluate(polynomial, x) - lagrange_evaluate(nodes.nodes, values, x)) <= 1e-9 * scale

    @settings(max_examples=100)
    @given(st.integers(min_value=0, max_value=8), st.data())
    def test_true_polynomial_is_independent_of_nodes(self, degree, data):
        """Test that any two node sets of size > degree recover f, with higher powers exactly 0."""
        coefficients = data.draw(st.lists(rationals, min_size=degree + 1, max_size=degree + 1))
        assume(coefficients[0] != 0)

        def f(x):
            total = Fraction(0)
            for coefficient in coefficients:
                total = total * x + coefficient
            return total

        fits = []
        for _ in range(2):
            nodes = data.draw(node_vectors(min_size=degree + 1, max_size=degree + 4))
            fits.append(fit(SampleSet(nodes, tuple(f(x) for x in nodes))))
        top = max(polynomial.declared_degree for polynomial in fits)
        for polynomial in fits:
            assert [polynomial.coefficient(power) for power in range(degree + 1)] == coefficients[::-1]
            assert all(polynomial.coefficient(power) == 0 for power in range(degree + 1, top + 1))

    @settings(max_examples=100)
    @given(node_vectors(max_size=10), st.data())
    def test_solve_recovers_coefficients(self, nodes, data):
        """Test solve(A, A . a) = a."""
        coefficients = tuple(data.draw(st.lists(rationals, min_size=len(nodes), max_size=len(nodes))))
        matrix = build_descending(nodes)
        assert solve(matrix, matrix.matvec(coefficients)) == coefficients

    @settings(max_examples=100)
    @given(float_node_vectors(max_order=10, jitter=0.25))
    def test_float_inverse_deviation(self, nodes):
        """Test max |A^-1 . A - I| < 1e-9 on the float backend."""
        matrix = build_descending(nodes)
        identity = SquareMatrix.identity(len(nodes), Backend.FLOAT)
        assert invert(matrix).matmul(matrix).max_abs_deviation(identity) < 1e-9


class TestPermutationProperties:
    """Properties of permuted systems."""

    @settings(max_examples=100)
    @given(permuted_systems())
    def test_permuted_system_has_same_solution(self, case):
        """Test that permuting rows and values leaves the solution unchanged."""
        samples, permutation = case
        matrix = build_descending(samples.nodes)
        permuted = permute_rows(matrix, permutation)
        assert solve(permuted, permute_vector(samples.values, permutation)) == solve(matrix, samples.values)

    @settings(max_examples=50)
    @given(permuted_systems())
    def test_permuted_inverse(self, case):
        """Test (A_p)^-1 = A^-1 with columns permuted by p."""
        samples, permutation = case
        matrix = build_descending(samples.nodes)
        assert invert(permute_rows(matrix, permutation)) == permute_columns(invert(matrix), permutation)

    @settings(max_examples=100)
    @given(permuted_systems())
    def test_permuted_determinant_magnitude(self, case):
        """Test that permuting rows changes the determinant by a sign only."""
        samples, permutation = case
        matrix = build_descending(samples.nodes)
        assert abs(det_elimination(permute_rows(matrix, permutation))) == abs(det_elimination(matrix))


class TestPartitionProperties:
    """Properties of uniform and dyadic partitions."""

    @pytest.mark.parametrize("base_count", [1, 2, 3, 5])
    def test_dyadic_nesting(self, base_count):
        """Test B_k inside B_(k+1) and N_k = 2^k N_0."""
        for level in range(6):
            coarse, fine = dyadic(base_count, level), dyadic(base_count, level + 1)
            assert coarse.node_count == 2 ** level * base_count
            assert set(coarse.nodes.nodes) <= set(fine.nodes.nodes)
            assert fine.node_count == 2 * coarse.node_count

    @settings(max_examples=100)
    @given(
        st.floats(min_value=1e-3, max_value=1e3, allow_nan=False, allow_infinity=False),
        st.integers(min_value=1, max_value=20),
    )
    def test_float_partition_symmetry(self, half_width, segments):
        """Test that symmetric float partitions are exactly symmetric."""
        nodes = uniform_partition(-half_width, half_width, segments)
        for j in range(segments + 1):
            assert nodes[segments - j] == -nodes[j]

    @settings(max_examples=100)
    @given(rationals, rationals, st.integers(min_value=1, max_value=12))
    def test_exact_partition_is_equispaced(self, a, b, segments):
        """Test equal exact spacing between consecutive nodes."""
        assume(a < b)
        nodes = uniform_partition(a, b, segments)
        gaps = {nodes[j + 1] - nodes[j] for j in range(segments)}
        assert gaps == {Fraction(b - a, 1) / segments}
