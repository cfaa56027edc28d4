"""
Exception hierarchy for the Vandermonde approximation toolkit.

Every error raised on purpose by the library derives from ApproximationError,
so callers (the CLI in particular) can map whole families to exit codes.
"""

from typing import Any, Optional, Tuple


class ApproximationError(Exception):
    """Base class for all library errors."""


class ScalarError(ApproximationError, ValueError):
    """Invalid scalar construction or parsing (e.g. zero denominator)."""


class BackendMismatchError(ScalarError):
    """Raised when exact and floating-point values meet in one operation."""

    def __init__(self, left: str, right: str, operation: str = "operation"):
        self.left = left
        self.right = right
        self.operation = operation
        super().__init__(
            f"Cannot mix scalar backends in {operation}: {left} vs {right}"
        )


class ZeroDivisionScalarError(ScalarError, ZeroDivisionError):
    """Field division by zero."""


class DimensionMismatchError(ApproximationError, ValueError):
    """Shapes do not agree (non-square matrix, rhs length, permutation order)."""


class NodeOrderError(ApproximationError, ValueError):
    """
    Nodes are not strictly increasing.

    Attributes:
        index: 0-based index of the first node of the offending pair
        pair: the two offending node values, in input order
    """

    def __init__(self, index: int, pair: Tuple[Any, Any]):
        self.index = index
        self.pair = pair
        super().__init__(
            f"Nodes must be strictly increasing: x[{index + 1}]={pair[0]} "
            f"is not less than x[{index + 2}]={pair[1]}"
        )


class SingularMatrixError(ApproximationError, ArithmeticError):
    """
    No usable pivot was found during elimination.

    Attributes:
        stage: 0-based elimination column where the pivot search failed,
            or None when the float solver only reports singularity
    """

    def __init__(self, stage: Optional[int], order: int):
        self.stage = stage
        self.order = order
        if stage is None:
            message = f"Matrix of order {order} is singular"
        else:
            message = (
                f"Matrix of order {order} is singular: no nonzero pivot "
                f"in column {stage + 1} at elimination stage {stage + 1}"
            )
        super().__init__(message)


class SampleError(ApproximationError):
    """A function handle failed while being sampled at a node."""

    def __init__(self, index: int, node: Any, reason: str):
        self.index = index
        self.node = node
        super().__init__(f"Sampling failed at node {index + 1} (x={node}): {reason}")


class StudyError(ApproximationError):
    """A fit inside a convergence or Taylor study failed."""

    def __init__(self, annotation: str, reason: str):
        self.annotation = annotation
        super().__init__(f"{annotation}: {reason}")


class UnknownFunctionError(ApproximationError, KeyError):
    """The function id is not in the closed registry."""

    def __init__(self, function_id: str, known: Tuple[str, ...]):
        self.function_id = function_id
        self.known = known
        super().__init__(function_id)

    def __str__(self) -> str:
        return (
            f"Unknown function id '{self.function_id}'. "
            f"Known ids: {', '.join(self.known)}"
        )


class UnknownFixtureError(ApproximationError, KeyError):
    """The fixture id is not one of the named node sets."""

    def __init__(self, fixture_id: str, known: Tuple[str, ...]):
        self.fixture_id = fixture_id
        self.known = known
        super().__init__(fixture_id)

    def __str__(self) -> str:
        return (
            f"Unknown fixture id '{self.fixture_id}'. "
            f"Known ids: {', '.join(self.known)}"
        )


class CrossCheckError(ApproximationError, AssertionError):
    """A documented numerical cross-check did not hold."""

    def __init__(self, check: str, expected: Any, actual: Any):
        self.check = check
        self.expected = expected
        self.actual = actual
        super().__init__(f"Cross-check '{check}' failed: expected {expected}, got {actual}")


class InputFormatError(ApproximationError, ValueError):
    """Malformed input file; line numbers are 1-based and include the header."""

    def __init__(self, line: int, reason: str):
        self.line = line
        super().__init__(f"line {line}: {reason}")


class ConfigurationError(ApproximationError, ValueError):
    """Invalid run configuration (conflicting inputs, illegal backend choice)."""


class UnknownExampleError(ApproximationError, KeyError):
    """The worked-example id is not one of the reproducible examples."""

    def __init__(self, example_id: str, known: Tuple[str, ...]):
        self.example_id = example_id
        self.known = known
        super().__init__(example_id)

    def __str__(self) -> str:
        return (
            f"Unknown example id '{self.example_id}'. "
            f"Known ids: {', '.join(self.known)}"
        )
