"""
Scalar backends for the Vandermonde approximation toolkit.

Two interchangeable backends sit behind one field-operations contract:

- exact: ``fractions.Fraction`` (canonical p/q, q > 0, gcd(|p|, q) = 1)
- float: Python ``float`` (IEEE 754 binary64)

Mixing the two raises BackendMismatchError; Fraction + float is never
promoted to float.
"""

import math
import operator
from enum import Enum
from fractions import Fraction
from typing import Any, Callable, Dict, Iterable, Optional, Tuple, Union

from .errors import BackendMismatchError, ScalarError, ZeroDivisionScalarError


class Backend(Enum):
    """Which arithmetic a computation runs in."""

    EXACT = "exact"  # fractions.Fraction
    FLOAT = "float"  # IEEE 754 binary64


Scalar = Union[Fraction, float]

_BINARY_OPS: Dict[str, Callable[[Any, Any], Any]] = {
    "add": operator.add,
    "sub": operator.sub,
    "mul": operator.mul,
    "div": operator.truediv,
}


def rational(num: int, den: int = 1) -> Fraction:
    """
    Builds a canonical rational number.

    Args:
        num: Numerator (any Python int)
        den: Denominator, nonzero

    Returns:
        Fraction in lowest terms with the sign carried on the numerator

    Raises:
        ScalarError: If den is zero or either part is not an integer
    """
    if isinstance(num, bool) or isinstance(den, bool):
        raise ScalarError("Rational parts must be integers, not booleans")
    if not isinstance(num, int) or not isinstance(den, int):
        raise ScalarError(f"Rational parts must be integers, got {num!r}/{den!r}")
    if den == 0:
        raise ScalarError(f"Zero denominator in rational({num}, {den})")
    return Fraction(num, den)


def backend_of(value: Any) -> Backend:
    """
    Returns the backend a scalar belongs to.

    Raises:
        ScalarError: If the value is neither a Fraction nor a float
    """
    if isinstance(value, Fraction):
        return Backend.EXACT
    if isinstance(value, float):
        return Backend.FLOAT
    raise ScalarError(f"Not a scalar: {value!r} ({type(value).__name__})")


def common_backend(values: Iterable[Any], operation: str = "collection") -> Backend:
    """
    Returns the single backend shared by all values.

    Raises:
        ScalarError: If values is empty
        BackendMismatchError: If two backends occur
    """
    found: Optional[Backend] = None
    for value in values:
        current = backend_of(value)
        if found is None:
            found = current
        elif current is not found:
            raise BackendMismatchError(found.value, current.value, operation)
    if found is None:
        raise ScalarError(f"Cannot infer a backend from an empty {operation}")
    return found


def _check_pair(a: Scalar, b: Scalar, operation: str) -> Backend:
    left, right = backend_of(a), backend_of(b)
    if left is not right:
        raise BackendMismatchError(left.value, right.value, operation)
    return left


def field_op(name: str, a: Scalar, b: Scalar) -> Scalar:
    """
    Applies a binary field operation under the backend-purity rule.

    Args:
        name: One of add, sub, mul, div
        a: Left operand
        b: Right operand, same backend as a

    Returns:
        Exact result on the exact backend, binary64 result otherwise

    Raises:
        BackendMismatchError: If a and b use different backends
        ZeroDivisionScalarError: If name is div and b is zero
    """
    if name not in _BINARY_OPS:
        raise ScalarError(f"Unknown field operation '{name}'")
    _check_pair(a, b, name)
    if name == "div" and b == 0:
        raise ZeroDivisionScalarError(f"Division by zero: {format_scalar(a)} / 0")
    return _BINARY_OPS[name](a, b)


def add(a: Scalar, b: Scalar) -> Scalar:
    return field_op("add", a, b)


def sub(a: Scalar, b: Scalar) -> Scalar:
    return field_op("sub", a, b)


def mul(a: Scalar, b: Scalar) -> Scalar:
    return field_op("mul", a, b)


def div(a: Scalar, b: Scalar) -> Scalar:
    return field_op("div", a, b)


def neg(a: Scalar) -> Scalar:
    backend_of(a)
    return -a


def compare(a: Scalar, b: Scalar) -> int:
    """Three-way comparison: -1, 0 or 1."""
    _check_pair(a, b, "cmp")
    return (a > b) - (a < b)


def to_float(a: Scalar) -> float:
    """
    Converts a scalar to the nearest binary64 value.

    Rationals too large for a float map to +/-infinity instead of raising.
    """
    if isinstance(a, float):
        return a
    try:
        return float(a)
    except OverflowError:
        return math.inf if a > 0 else -math.inf


def coerce(value: Any, backend: Backend) -> Scalar:
    """
    Converts ints, strings and scalars into the requested backend.

    Floats are never promoted to the exact backend.

    Raises:
        BackendMismatchError: If a float is coerced to the exact backend
        ScalarError: If the value cannot be interpreted
    """
    if isinstance(value, str):
        return parse_scalar(value, backend)
    if isinstance(value, bool):
        raise ScalarError(f"Booleans are not scalars: {value!r}")
    if backend is Backend.EXACT:
        if isinstance(value, Fraction):
            return value
        if isinstance(value, int):
            return Fraction(value)
        if isinstance(value, float):
            raise BackendMismatchError(Backend.EXACT.value, Backend.FLOAT.value, "coerce")
    else:
        if isinstance(value, (Fraction, int)):
            return to_float(Fraction(value))
        if isinstance(value, float):
            return value
    raise ScalarError(f"Cannot coerce {value!r} to the {backend.value} backend")


def parse_scalar(text: str, backend: Optional[Backend] = None) -> Scalar:
    """
    Parses "p/q", integer or decimal text.

    On the exact backend decimals are read exactly ("0.96" -> 24/25);
    on the float backend "p/q" is rounded once to the nearest float.

    Args:
        text: Scalar text
        backend: Target backend; defaults to exact

    Raises:
        ScalarError: If the text is empty, malformed or has a zero denominator
    """
    backend = backend or Backend.EXACT
    cleaned = text.strip()
    if not cleaned:
        raise ScalarError("Empty scalar text")
    try:
        exact = Fraction(cleaned)
    except ZeroDivisionError:
        raise ScalarError(f"Zero denominator in '{cleaned}'")
    except ValueError:
        if backend is Backend.FLOAT:
            try:
                return float(cleaned)
            except ValueError:
                pass
        raise ScalarError(f"Cannot parse scalar '{cleaned}'")
    if backend is Backend.EXACT:
        return exact
    if "/" in cleaned:
        return to_float(exact)
    return float(cleaned)


def format_scalar(value: Scalar) -> str:
    """
    Serializes a scalar: "p/q" (or "p" when q = 1) for rationals,
    shortest round-trip decimal for floats.
    """
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, float):
        return repr(value)
    raise ScalarError(f"Not a scalar: {value!r}")


def zero(backend: Backend) -> Scalar:
    return Fraction(0) if backend is Backend.EXACT else 0.0


def one(backend: Backend) -> Scalar:
    return Fraction(1) if backend is Backend.EXACT else 1.0


def as_backend(values: Iterable[Any], backend: Backend) -> Tuple[Scalar, ...]:
    """Coerces every value into one backend."""
    return tuple(coerce(value, backend) for value in values)
