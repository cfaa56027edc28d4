"""
Unit tests for Vandermonde matrices, determinants and solves.
"""

from fractions import Fraction

import pytest

from vandermonde_approx.components.vandermonde import (
    NodeSystem,
    build,
    build_ascending,
    build_descending,
    det_elimination,
    det_inductive,
    det_product,
    determinant_report,
    invert,
    permute_columns,
    permute_rows,
    permute_vector,
    residual_norm,
    sign_relation,
    solve,
)
from vandermonde_approx.errors import BackendMismatchError, DimensionMismatchError, SingularMatrixError
from vandermonde_approx.models import NodeVector, Permutation, SquareMatrix
from vandermonde_approx.scalar import Backend


class TestBuild:
    """Tests for matrix construction."""

    def test_descending_rows(self, symmetric_three_nodes):
        """Test that row i of A is (x_i^2, x_i, 1)."""
        assert build_descending(symmetric_three_nodes).to_list() == [
            ["1", "-1", "1"],
            ["0", "0", "1"],
            ["1", "1", "1"],
        ]

    def test_ascending_is_reversed_descending(self):
        """Test that B is A with its columns reversed."""
        nodes = NodeVector.of(["1/2", 2, 3, 7])
        assert build_ascending(nodes).reverse_columns() == build_descending(nodes)

    def test_unknown_orientation(self, symmetric_three_nodes):
        """Test that an unknown orientation is rejected."""
        with pytest.raises(ValueError):
            build(symmetric_three_nodes, "sideways")


class TestDeterminants:
    """Tests for the three determinant computations."""

    def test_product_formula(self):
        """Test the product of node differences on 1, 2, 3, 4."""
        assert det_product(NodeVector.of([1, 2, 3, 4])) == 12

    def test_descending_sign(self, symmetric_three_nodes):
        """Test Det(A) = -Det(B) for three nodes."""
        assert det_product(symmetric_three_nodes) == 2
        assert det_elimination(build_descending(symmetric_three_nodes)) == -2
        assert det_elimination(build_ascending(symmetric_three_nodes)) == 2

    @pytest.mark.parametrize("order,sign", [(1, 1), (2, -1), (3, -1), (4, 1), (5, 1), (6, -1), (7, -1), (8, 1)])
    def test_sign_relation(self, order, sign):
        """Test the sign pattern + - - + + - - +."""
        assert sign_relation(order) == sign

    def test_sign_relation_rejects_empty(self):
        """Test that order 0 has no sign relation."""
        with pytest.raises(DimensionMismatchError):
            sign_relation(0)

    def test_inductive_matches_product(self):
        """Test the column-reduction determinant on unevenly spaced nodes."""
        nodes = NodeVector.of(["-3/2", "-1/3", 0, "5/7", 4])
        assert det_inductive(nodes) == det_product(nodes)

    def test_single_node(self):
        """Test that the order-1 determinant is 1."""
        nodes = NodeVector.of([7])
        assert det_product(nodes) == 1
        assert det_inductive(nodes) == 1
        assert det_elimination(build_descending(nodes)) == 1

    def test_singular_matrix_determinant_is_zero(self):
        """Test that elimination on a singular matrix returns zero."""
        assert det_elimination(SquareMatrix.from_rows([[1, 2], [2, 4]])) == 0

    def test_report_agrees(self, symmetric_three_nodes):
        """Test the determinant report for -1, 0, 1."""
        report = determinant_report(symmetric_three_nodes)
        assert report.agree
        assert report.to_dict()['elimination'] == "-2"
        assert report.to_dict()['sign'] == "-1"

    def test_report_ascending_float(self):
        """Test that float determinants agree within tolerance."""
        report = determinant_report(NodeVector.of([0.0, 0.5, 1.5, 2.0]), "ascending")
        assert report.agree
        assert report.sign == 1
        assert report.product == pytest.approx(0.5 * 1.5 * 2.0 * 1.0 * 1.5 * 0.5)


class TestInverseAndSolve:
    """Tests for inversion and linear solves."""

    def test_inverse_on_one_two_three(self):
        """Test the exact inverse of A for nodes 1, 2, 3."""
        inverse = invert(build_descending(NodeVector.of([1, 2, 3])))
        assert inverse.to_list() == [["1/2", "-1", "1/2"], ["-5/2", "4", "-3/2"], ["3", "-3", "1"]]

    def test_inverse_times_matrix_is_identity(self):
        """Test A . A^-1 = I exactly."""
        matrix = build_descending(NodeVector.of(["-1/2", "1/3", 1, 2]))
        assert matrix.matmul(invert(matrix)) == SquareMatrix.identity(4)

    def test_exact_singular_reports_stage(self):
        """Test that the exact solver names the failing column."""
        with pytest.raises(SingularMatrixError) as info:
            invert(SquareMatrix.from_rows([[1, 2], [2, 4]]))
        assert info.value.stage == 1

    def test_float_singular_has_no_stage(self):
        """Test that float singularity is reported without a stage."""
        with pytest.raises(SingularMatrixError) as info:
            invert(SquareMatrix.from_rows([[1.0, 2.0], [2.0, 4.0]]))
        assert info.value.stage is None

    def test_solve_exact(self, symmetric_three_nodes):
        """Test a = (-1, 3, 5) for -x^2 + 3x + 5 on -1, 0, 1."""
        matrix = build_descending(symmetric_three_nodes)
        rhs = (Fraction(1), Fraction(5), Fraction(7))
        solution = solve(matrix, rhs)
        assert solution == (-1, 3, 5)
        assert residual_norm(matrix, solution, rhs) == 0.0

    def test_solve_float(self):
        """Test a float solve of x^2 + 1 on 0, 1, 2."""
        matrix = build_descending(NodeVector.of([0.0, 1.0, 2.0]))
        assert solve(matrix, (1.0, 2.0, 5.0)) == pytest.approx((1.0, 0.0, 1.0))

    def test_solve_length_mismatch(self, symmetric_three_nodes):
        """Test that a short right-hand side is rejected."""
        with pytest.raises(DimensionMismatchError):
            solve(build_descending(symmetric_three_nodes), (Fraction(1), Fraction(2)))

    def test_solve_backend_mismatch(self, symmetric_three_nodes):
        """Test that float values cannot be solved against an exact matrix."""
        with pytest.raises(BackendMismatchError):
            solve(build_descending(symmetric_three_nodes), (1.0, 5.0, 7.0))


class TestPermutations:
    """Tests for row and column permutations."""

    def test_permute_rows_reverses(self, symmetric_three_nodes):
        """Test that p = (3, 2, 1) reverses the rows."""
        matrix = build_descending(symmetric_three_nodes)
        permuted = permute_rows(matrix, Permutation.from_one_based([3, 2, 1]))
        assert permuted.to_list() == [["1", "1", "1"], ["0", "0", "1"], ["1", "-1", "1"]]

    def test_permuted_inverse_is_column_permutation(self, symmetric_three_nodes):
        """Test (A_p)^-1 equals A^-1 with its columns permuted by p."""
        matrix = build_descending(symmetric_three_nodes)
        permutation = Permutation.from_one_based([2, 3, 1])
        assert invert(permute_rows(matrix, permutation)) == permute_columns(invert(matrix), permutation)

    def test_permute_vector(self):
        """Test that entry i becomes entry p(i)."""
        assert permute_vector(("a", "b", "c"), Permutation.from_one_based([3, 1, 2])) == ("c", "a", "b")

    def test_order_mismatch(self, symmetric_three_nodes):
        """Test that permutations must match the matrix order."""
        with pytest.raises(DimensionMismatchError):
            permute_rows(build_descending(symmetric_three_nodes), Permutation.identity(2))


class TestNodeSystem:
    """Tests for the reusable inverse of a node vector."""

    def test_inverse_is_cached(self):
        """Test that the inverse is built once."""
        system = NodeSystem(NodeVector.of([1, 2, 3]))
        assert system.inverse is system.inverse

    def test_fit_matches_solve(self, cubic_samples):
        """Test that A^-1 . b equals the direct solve."""
        system = NodeSystem(cubic_samples.nodes)
        assert system.fit(cubic_samples.values).coefficients == solve(system.matrix, cubic_samples.values)

    def test_fit_many_value_vectors(self):
        """Test that one inverse serves several value vectors."""
        system = NodeSystem(NodeVector.of([-1, 0, 1]))
        assert system.fit([1, 0, 1]).to_list() == ["1", "0", "0"]
        assert system.fit([-1, 0, 1]).to_list() == ["0", "1", "0"]
