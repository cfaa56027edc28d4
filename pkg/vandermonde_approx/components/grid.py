"""
Uniform and dyadic partitions, the [a, b] -> [0, 1] rescaling, and sampling.
"""

import logging
from fractions import Fraction
from typing import Any, Callable, Optional

from ..errors import ApproximationError, DimensionMismatchError, SampleError
from ..models import DomainMap, DyadicPartition, NodeVector, SampleSet
from ..scalar import Backend, Scalar, coerce, format_scalar

logger = logging.getLogger(__name__)

FunctionHandle = Callable[[Scalar], Scalar]


def uniform_partition(a: Any, b: Any, segments: int, backend: Optional[Backend] = None) -> NodeVector:
    """
    n + 1 equispaced nodes from a to b inclusive.

    The endpoints are a and b themselves; interior node j is computed as
    (a*(n-j) + b*j)/n, so on a symmetric interval node n-j is exactly
    -(node j) on both backends.

    Args:
        a: Left endpoint (int, string or scalar)
        b: Right endpoint, a < b
        segments: n >= 1
        backend: Target backend; inferred from float endpoints when omitted

    Raises:
        DimensionMismatchError: If segments < 1
        ValueError: If a >= b
    """
    if segments < 1:
        raise DimensionMismatchError(f"A partition needs at least one segment, got {segments}")
    if backend is None:
        backend = Backend.FLOAT if isinstance(a, float) or isinstance(b, float) else Backend.EXACT
    left, right = coerce(a, backend), coerce(b, backend)
    if not left < right:
        raise ValueError(f"Partition interval needs a < b, got [{format_scalar(left)}, {format_scalar(right)}]")
    nodes = [(left * (segments - j) + right * j) / segments for j in range(1, segments)]
    return NodeVector((left, *nodes, right), backend)


def dyadic(base_count: int, level: int) -> DyadicPartition:
    """
    B_k = {j / N_k : j = 0..N_k} with N_k = 2^k * N_0.

    Raises:
        ValueError: If base_count < 1 or level < 0
    """
    if base_count < 1:
        raise ValueError(f"Base count must be >= 1, got {base_count}")
    if level < 0:
        raise ValueError(f"Level must be >= 0, got {level}")
    count = (2 ** level) * base_count
    nodes = NodeVector(tuple(Fraction(j, count) for j in range(count + 1)), Backend.EXACT)
    return DyadicPartition(base_count=base_count, level=level, nodes=nodes)


def mesh_width(partition: DyadicPartition) -> Fraction:
    return partition.mesh_width


def to_unit(domain: DomainMap, f: FunctionHandle) -> FunctionHandle:
    """g(y) = f(a + y(b - a)), a function on [0, 1]."""

    def g(y: Scalar) -> Scalar:
        return f(domain.inverse(y))

    return g


def from_unit(domain: DomainMap, g: FunctionHandle) -> FunctionHandle:
    """f(x) = g((x - a)/(b - a)), the inverse of to_unit."""

    def f(x: Scalar) -> Scalar:
        return g(domain.forward(x))

    return f


def sample(f: FunctionHandle, nodes: NodeVector, backend: Optional[Backend] = None) -> SampleSet:
    """
    Pairs each node with f(node).

    Exact nodes sampled for the float backend are converted to floats
    first. Values are coerced to the target backend; a float value on the
    exact backend is a sampling failure.

    Raises:
        SampleError: If f raises or returns an unusable value at a node
    """
    backend = backend or nodes.backend
    if backend is Backend.FLOAT:
        nodes = nodes.to_float()
    elif nodes.backend is not Backend.EXACT:
        raise SampleError(0, format_scalar(nodes[0]), "float nodes cannot be sampled exactly")
    values = []
    for index, x in enumerate(nodes):
        try:
            value = coerce(f(x), backend)
        except (ApproximationError, ArithmeticError, ValueError, TypeError) as e:
            raise SampleError(index, format_scalar(x), str(e)) from e
        values.append(value)
    logger.debug(f"Sampled {len(values)} {backend.value} values")
    return SampleSet(nodes, tuple(values))


__all__ = [
    'FunctionHandle',
    'uniform_partition',
    'dyadic',
    'mesh_width',
    'to_unit',
    'from_unit',
    'sample',
]
