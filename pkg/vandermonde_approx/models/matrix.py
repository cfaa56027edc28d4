"""
Matrix, node and permutation models.
"""

import json
from dataclasses import dataclass
from typing import Any, Iterable, List, Optional, Sequence, Tuple

from ..errors import BackendMismatchError, DimensionMismatchError, NodeOrderError, ScalarError
from ..scalar import Backend, Scalar, as_backend, common_backend, format_scalar, one, zero


@dataclass(frozen=True)
class SquareMatrix:
    """
    Dense square matrix over one scalar backend, row-major.

    Attributes:
        entries: Rows of scalars; all rows have length equal to the row count
        backend: Backend shared by every entry
    """

    entries: Tuple[Tuple[Scalar, ...], ...]
    backend: Backend

    def __post_init__(self):
        order = len(self.entries)
        if order < 1:
            raise DimensionMismatchError("A square matrix needs order >= 1")
        for index, row in enumerate(self.entries):
            if len(row) != order:
                raise DimensionMismatchError(
                    f"Row {index + 1} has {len(row)} entries, expected {order}"
                )
        found = common_backend((value for row in self.entries for value in row), "matrix")
        if found is not self.backend:
            raise ScalarError(
                f"Matrix declared {self.backend.value} but holds {found.value} entries"
            )

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[Any]], backend: Optional[Backend] = None) -> 'SquareMatrix':
        """
        Builds a matrix from nested iterables of ints, strings or scalars.

        Args:
            rows: Row-major values
            backend: Target backend; inferred from the values when omitted
                (plain ints and strings default to exact)
        """
        raw = [list(row) for row in rows]
        if backend is None:
            backend = Backend.FLOAT if any(isinstance(v, float) for row in raw for v in row) else Backend.EXACT
        return cls(tuple(as_backend(row, backend) for row in raw), backend)

    @classmethod
    def identity(cls, order: int, backend: Backend = Backend.EXACT) -> 'SquareMatrix':
        if order < 1:
            raise DimensionMismatchError("A square matrix needs order >= 1")
        return cls(
            tuple(
                tuple(one(backend) if i == j else zero(backend) for j in range(order))
                for i in range(order)
            ),
            backend,
        )

    @property
    def order(self) -> int:
        return len(self.entries)

    def row(self, index: int) -> Tuple[Scalar, ...]:
        return self.entries[index]

    def column(self, index: int) -> Tuple[Scalar, ...]:
        return tuple(row[index] for row in self.entries)

    def transpose(self) -> 'SquareMatrix':
        return SquareMatrix(tuple(zip(*self.entries)), self.backend)

    def reverse_columns(self) -> 'SquareMatrix':
        return SquareMatrix(tuple(tuple(reversed(row)) for row in self.entries), self.backend)

    def matmul(self, other: 'SquareMatrix') -> 'SquareMatrix':
        """Matrix product self . other."""
        self._check_partner(other.order, other.backend, "matmul")
        columns = [other.column(j) for j in range(other.order)]
        return SquareMatrix(
            tuple(
                tuple(_dot(row, col, self.backend) for col in columns)
                for row in self.entries
            ),
            self.backend,
        )

    def matvec(self, vector: Sequence[Scalar]) -> Tuple[Scalar, ...]:
        """Matrix-vector product self . vector."""
        if len(vector) != self.order:
            raise DimensionMismatchError(
                f"Vector of length {len(vector)} does not match matrix order {self.order}"
            )
        if vector:
            self._check_partner(self.order, common_backend(vector, "vector"), "matvec")
        return tuple(_dot(row, vector, self.backend) for row in self.entries)

    def max_abs_deviation(self, other: 'SquareMatrix') -> float:
        """Largest entry-wise |self - other| as a float."""
        self._check_partner(other.order, other.backend, "compare")
        return max(
            float(abs(a - b))
            for row_a, row_b in zip(self.entries, other.entries)
            for a, b in zip(row_a, row_b)
        )

    def to_list(self) -> List[List[str]]:
        """Array-of-arrays of scalar strings."""
        return [[format_scalar(value) for value in row] for row in self.entries]

    def to_json(self) -> str:
        return json.dumps(self.to_list())

    def _check_partner(self, order: int, backend: Backend, operation: str) -> None:
        if order != self.order:
            raise DimensionMismatchError(
                f"Order mismatch in {operation}: {self.order} vs {order}"
            )
        if backend is not self.backend:
            raise BackendMismatchError(self.backend.value, backend.value, operation)


def _dot(left: Sequence[Scalar], right: Sequence[Scalar], backend: Backend) -> Scalar:
    total = zero(backend)
    for a, b in zip(left, right):
        total += a * b
    return total


@dataclass(frozen=True)
class NodeVector:
    """
    Strictly increasing interpolation nodes x_1 < x_2 < ... < x_{m+1}.

    Attributes:
        nodes: Node values, all on one backend
        backend: Backend shared by the nodes
    """

    nodes: Tuple[Scalar, ...]
    backend: Backend

    def __post_init__(self):
        if len(self.nodes) < 1:
            raise DimensionMismatchError("A node vector needs at least one node")
        found = common_backend(self.nodes, "node vector")
        if found is not self.backend:
            raise ScalarError(
                f"Node vector declared {self.backend.value} but holds {found.value} nodes"
            )
        for index in range(len(self.nodes) - 1):
            if not self.nodes[index] < self.nodes[index + 1]:
                raise NodeOrderError(index, (self.nodes[index], self.nodes[index + 1]))

    @classmethod
    def of(cls, values: Iterable[Any], backend: Optional[Backend] = None) -> 'NodeVector':
        """
        Builds a node vector from ints, strings or scalars.

        Raises:
            NodeOrderError: If the values are not strictly increasing
        """
        raw = list(values)
        if backend is None:
            backend = Backend.FLOAT if any(isinstance(v, float) for v in raw) else Backend.EXACT
        return cls(as_backend(raw, backend), backend)

    def __len__(self) -> int:
        return len(self.nodes)

    def __iter__(self):
        return iter(self.nodes)

    def __getitem__(self, index):
        return self.nodes[index]

    def to_float(self) -> 'NodeVector':
        """Same nodes on the float backend."""
        if self.backend is Backend.FLOAT:
            return self
        return NodeVector(as_backend(self.nodes, Backend.FLOAT), Backend.FLOAT)

    def to_list(self) -> List[str]:
        return [format_scalar(value) for value in self.nodes]


@dataclass(frozen=True)
class Permutation:
    """
    Bijection on {1, ..., n}, stored 0-based.

    ``mapping[i] = p(i + 1) - 1``; permuting rows puts input row p(i) at
    position i.
    """

    mapping: Tuple[int, ...]

    def __post_init__(self):
        if sorted(self.mapping) != list(range(len(self.mapping))):
            raise DimensionMismatchError(
                f"Not a permutation of 1..{len(self.mapping)}: "
                f"{[value + 1 for value in self.mapping]}"
            )

    @classmethod
    def from_one_based(cls, images: Iterable[int]) -> 'Permutation':
        """Builds p from (p(1), ..., p(n))."""
        return cls(tuple(image - 1 for image in images))

    @classmethod
    def identity(cls, order: int) -> 'Permutation':
        return cls(tuple(range(order)))

    @property
    def order(self) -> int:
        return len(self.mapping)

    def inverse(self) -> 'Permutation':
        inverse = [0] * self.order
        for index, image in enumerate(self.mapping):
            inverse[image] = index
        return Permutation(tuple(inverse))

    def to_one_based(self) -> List[int]:
        return [image + 1 for image in self.mapping]
