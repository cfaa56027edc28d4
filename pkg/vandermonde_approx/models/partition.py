"""
Grid models: dyadic partitions of [0, 1] and the affine map onto them.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from ..errors import DimensionMismatchError, ScalarError
from ..scalar import Backend, Scalar, backend_of, coerce
from .matrix import NodeVector


@dataclass(frozen=True)
class DyadicPartition:
    """
    Uniform partition of [0, 1] into N_k = 2^k * N_0 segments.

    Attributes:
        base_count: N_0 >= 1
        level: k >= 0
        nodes: j / N_k for j = 0..N_k, exact
    """

    base_count: int
    level: int
    nodes: NodeVector

    def __post_init__(self):
        if self.base_count < 1:
            raise ValueError(f"Base count must be >= 1, got {self.base_count}")
        if self.level < 0:
            raise ValueError(f"Level must be >= 0, got {self.level}")
        if self.nodes.backend is not Backend.EXACT:
            raise ScalarError("Dyadic partitions are exact")
        if len(self.nodes) != self.node_count + 1:
            raise DimensionMismatchError(
                f"Level {self.level} of base {self.base_count} needs {self.node_count + 1} nodes, "
                f"got {len(self.nodes)}"
            )

    @property
    def node_count(self) -> int:
        """N_k, the number of segments."""
        return (2 ** self.level) * self.base_count

    @property
    def mesh_width(self) -> Fraction:
        return Fraction(1, self.node_count)


@dataclass(frozen=True)
class DomainMap:
    """
    Affine bijection h(x) = (x - a) / (b - a) from [a, b] onto [0, 1].

    Attributes:
        a: Left endpoint
        b: Right endpoint, a < b, same backend as a
    """

    a: Scalar
    b: Scalar

    def __post_init__(self):
        if backend_of(self.a) is not backend_of(self.b):
            raise ScalarError("Interval endpoints must share a backend")
        if not self.a < self.b:
            raise ValueError(f"Interval needs a < b, got [{self.a}, {self.b}]")

    @classmethod
    def of(cls, a: Any, b: Any, backend: Backend = Backend.EXACT) -> 'DomainMap':
        return cls(coerce(a, backend), coerce(b, backend))

    @property
    def backend(self) -> Backend:
        return backend_of(self.a)

    @property
    def width(self) -> Scalar:
        return self.b - self.a

    def forward(self, x: Scalar) -> Scalar:
        """[a, b] -> [0, 1]."""
        return (coerce(x, self.backend) - self.a) / self.width

    def inverse(self, y: Scalar) -> Scalar:
        """[0, 1] -> [a, b]."""
        return self.a + coerce(y, self.backend) * self.width
