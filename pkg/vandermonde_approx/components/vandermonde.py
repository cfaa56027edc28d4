"""
Vandermonde matrices, determinants and linear solves.

Two matrices are built from nodes x_1 < ... < x_n:

- descending A, row i = (x_i^(n-1), ..., x_i, 1), matching coefficient
  vectors (a_{n-1}, ..., a_0)
- ascending B, row i = (1, x_i, ..., x_i^(n-1))

Exact matrices are reduced with first-nonzero pivoting over Fractions.
Float matrices go through numpy.linalg (LU with partial pivoting).
"""

import logging
import math
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..errors import DimensionMismatchError, SingularMatrixError
from ..models import DeterminantReport, NodeVector, Permutation, Polynomial, SquareMatrix
from ..scalar import Backend, Scalar, as_backend, common_backend, one, to_float

logger = logging.getLogger(__name__)

ORIENTATIONS = ("descending", "ascending")


def build_descending(nodes: NodeVector) -> SquareMatrix:
    """Matrix A: entry (i, j) = x_i^(n-j), 1-based."""
    order = len(nodes)
    return SquareMatrix(
        tuple(tuple(x ** (order - 1 - j) for j in range(order)) for x in nodes),
        nodes.backend,
    )


def build_ascending(nodes: NodeVector) -> SquareMatrix:
    """Matrix B: entry (i, j) = x_i^(j-1), 1-based."""
    order = len(nodes)
    return SquareMatrix(
        tuple(tuple(x ** j for j in range(order)) for x in nodes),
        nodes.backend,
    )


def build(nodes: NodeVector, orientation: str = "descending") -> SquareMatrix:
    if orientation == "descending":
        return build_descending(nodes)
    if orientation == "ascending":
        return build_ascending(nodes)
    raise ValueError(f"Unknown orientation '{orientation}'; use descending or ascending")


def det_product(nodes: Sequence[Scalar]) -> Scalar:
    """
    Product of (x_j - x_i) over i < j; the determinant of B.

    Nodes are taken in the order given, so they need not be sorted.
    """
    result = one(common_backend(nodes, "det_product"))
    for j in range(len(nodes)):
        for i in range(j):
            result *= nodes[j] - nodes[i]
    return result


def det_inductive(nodes: NodeVector) -> Scalar:
    """
    Determinant of B by repeated column reduction.

    Each step replaces C_j by C_j - x_n * C_{j-1} for j = n..2, which turns
    the last row into (1, 0, ..., 0). Expanding along that row leaves the
    minor on rows 1..n-1, columns 2..n, whose row i carries the factor
    (x_i - x_n). Dividing those factors out leaves the ascending matrix of
    the first n-1 nodes, so the loop repeats on it.
    """
    rows = [list(row) for row in build_ascending(nodes).entries]
    result = one(nodes.backend)
    while len(rows) > 1:
        order = len(rows)
        last_node = rows[-1][1]
        for j in range(order - 1, 0, -1):
            for row in rows:
                row[j] = row[j] - last_node * row[j - 1]
        if order % 2 == 0:
            # cofactor sign (-1)^(n+1)
            result = -result
        minor = []
        for row in rows[:-1]:
            factor = row[1]
            result *= factor
            minor.append([value / factor for value in row[1:]])
        rows = minor
    return result * rows[0][0]


def sign_relation(order: int) -> int:
    """
    Sign s with Det(A) = s * Det(B) for matrices of the given order.

    Reversing n columns takes floor(n/2) swaps.
    """
    if order < 1:
        raise DimensionMismatchError(f"Order must be >= 1, got {order}")
    return -1 if (order // 2) % 2 else 1


def _to_array(matrix: SquareMatrix) -> np.ndarray:
    return np.array(matrix.entries, dtype=float)


def _exact_det(matrix: SquareMatrix) -> Fraction:
    rows = [list(row) for row in matrix.entries]
    order = matrix.order
    result = Fraction(1)
    for col in range(order):
        pivot = next((r for r in range(col, order) if rows[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            result = -result
        result *= rows[col][col]
        for r in range(col + 1, order):
            factor = rows[r][col] / rows[col][col]
            if factor:
                for k in range(col, order):
                    rows[r][k] -= factor * rows[col][k]
    return result


def det_elimination(matrix: SquareMatrix) -> Scalar:
    """
    General determinant by Gaussian elimination.

    Singular input is legal and yields zero.
    """
    if matrix.backend is Backend.EXACT:
        return _exact_det(matrix)
    return float(np.linalg.det(_to_array(matrix)))


def _exact_solve_columns(matrix: SquareMatrix, rhs: List[List[Fraction]]) -> List[List[Fraction]]:
    """
    Solves matrix . X = rhs for an n x k right-hand side.

    Forward elimination with first-nonzero pivots, then back substitution.

    Raises:
        SingularMatrixError: At the first column with no nonzero pivot
    """
    order = matrix.order
    rows = [list(row) for row in matrix.entries]
    rhs = [list(row) for row in rhs]
    width = len(rhs[0]) if rhs else 0
    for col in range(order):
        pivot = next((r for r in range(col, order) if rows[r][col] != 0), None)
        if pivot is None:
            raise SingularMatrixError(col, order)
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            rhs[col], rhs[pivot] = rhs[pivot], rhs[col]
        for r in range(col + 1, order):
            factor = rows[r][col] / rows[col][col]
            if not factor:
                continue
            for k in range(col, order):
                rows[r][k] -= factor * rows[col][k]
            for k in range(width):
                rhs[r][k] -= factor * rhs[col][k]
    solution = [[Fraction(0)] * width for _ in range(order)]
    for r in range(order - 1, -1, -1):
        for k in range(width):
            total = rhs[r][k]
            for c in range(r + 1, order):
                total -= rows[r][c] * solution[c][k]
            solution[r][k] = total / rows[r][r]
    return solution


def invert(matrix: SquareMatrix) -> SquareMatrix:
    """
    Inverse matrix.

    Raises:
        SingularMatrixError: If the matrix is singular (stage is None on
            the float backend, where numpy does not report it)
    """
    if matrix.backend is Backend.EXACT:
        identity = [list(row) for row in SquareMatrix.identity(matrix.order).entries]
        columns = _exact_solve_columns(matrix, identity)
        return SquareMatrix(tuple(tuple(row) for row in columns), Backend.EXACT)
    try:
        inverse = np.linalg.inv(_to_array(matrix))
    except np.linalg.LinAlgError as e:
        raise SingularMatrixError(None, matrix.order) from e
    return SquareMatrix(tuple(tuple(float(v) for v in row) for row in inverse), Backend.FLOAT)


def solve(matrix: SquareMatrix, rhs: Sequence[Scalar]) -> Tuple[Scalar, ...]:
    """
    Solves matrix . a = rhs without forming the inverse.

    Raises:
        DimensionMismatchError: If len(rhs) differs from the matrix order
        BackendMismatchError: If rhs and matrix backends differ
        SingularMatrixError: If the matrix is singular
    """
    if len(rhs) != matrix.order:
        raise DimensionMismatchError(
            f"Right-hand side has {len(rhs)} entries, matrix order is {matrix.order}"
        )
    matrix._check_partner(matrix.order, common_backend(rhs, "solve"), "solve")
    if matrix.backend is Backend.EXACT:
        columns = _exact_solve_columns(matrix, [[value] for value in rhs])
        return tuple(row[0] for row in columns)
    try:
        solution = np.linalg.solve(_to_array(matrix), np.array(rhs, dtype=float))
    except np.linalg.LinAlgError as e:
        raise SingularMatrixError(None, matrix.order) from e
    return tuple(float(v) for v in solution)


def residual_norm(matrix: SquareMatrix, solution: Sequence[Scalar], rhs: Sequence[Scalar]) -> float:
    """||matrix . solution - rhs||_inf as a float."""
    if len(rhs) != matrix.order:
        raise DimensionMismatchError(
            f"Right-hand side has {len(rhs)} entries, matrix order is {matrix.order}"
        )
    product = matrix.matvec(solution)
    return max(to_float(abs(p - b)) for p, b in zip(product, rhs))


def _check_permutation(order: int, permutation: Permutation) -> None:
    if permutation.order != order:
        raise DimensionMismatchError(
            f"Permutation of order {permutation.order} applied to order {order}"
        )


def permute_rows(matrix: SquareMatrix, permutation: Permutation) -> SquareMatrix:
    """Row i of the result is row p(i) of the input."""
    _check_permutation(matrix.order, permutation)
    return SquareMatrix(
        tuple(matrix.entries[source] for source in permutation.mapping),
        matrix.backend,
    )


def permute_columns(matrix: SquareMatrix, permutation: Permutation) -> SquareMatrix:
    """Column j of the result is column p(j) of the input."""
    _check_permutation(matrix.order, permutation)
    return SquareMatrix(
        tuple(tuple(row[source] for source in permutation.mapping) for row in matrix.entries),
        matrix.backend,
    )


def permute_vector(vector: Sequence[Scalar], permutation: Permutation) -> Tuple[Scalar, ...]:
    """Entry i of the result is entry p(i) of the input."""
    _check_permutation(len(vector), permutation)
    return tuple(vector[source] for source in permutation.mapping)


class NodeSystem:
    """
    Descending Vandermonde system for a fixed node vector.

    A and A^{-1} depend only on the nodes, so the inverse is built once and
    reused for every value vector fitted through the same nodes.
    """

    def __init__(self, nodes: NodeVector):
        self.nodes = nodes
        self.matrix = build_descending(nodes)
        self._inverse: Optional[SquareMatrix] = None

    @property
    def inverse(self) -> SquareMatrix:
        if self._inverse is None:
            logger.debug(f"Inverting order-{self.matrix.order} {self.nodes.backend.value} system")
            self._inverse = invert(self.matrix)
        return self._inverse

    def fit(self, values: Sequence[object]) -> Polynomial:
        """Coefficients A^{-1} . b for one value vector."""
        coerced = as_backend(values, self.nodes.backend)
        return Polynomial(self.inverse.matvec(coerced), self.nodes.backend)


def determinant_report(
    nodes: NodeVector,
    orientation: str = "descending",
    rel_tol: float = 1e-9,
) -> DeterminantReport:
    """
    Product, elimination and inductive determinants side by side.

    On the exact backend agreement is structural equality; on the float
    backend it is closeness within rel_tol.
    """
    matrix = build(nodes, orientation)
    product = det_product(nodes)
    inductive = det_inductive(nodes)
    elimination = det_elimination(matrix)
    sign = sign_relation(len(nodes)) if orientation == "descending" else 1
    expected = product * sign
    if nodes.backend is Backend.EXACT:
        agree = inductive == product and elimination == expected
    else:
        agree = (
            math.isclose(inductive, product, rel_tol=rel_tol)
            and math.isclose(elimination, expected, rel_tol=rel_tol)
        )
    logger.debug(
        f"Determinant order {len(nodes)} ({orientation}): product={product}, "
        f"elimination={elimination}, agree={agree}"
    )
    return DeterminantReport(
        nodes=nodes,
        orientation=orientation,
        product=product,
        elimination=elimination,
        inductive=inductive,
        sign=sign,
        agree=agree,
    )


__all__ = [
    'ORIENTATIONS',
    'build_descending',
    'build_ascending',
    'build',
    'det_product',
    'det_inductive',
    'det_elimination',
    'sign_relation',
    'invert',
    'solve',
    'residual_norm',
    'permute_rows',
    'permute_columns',
    'permute_vector',
    'NodeSystem',
    'determinant_report',
]
