"""
Closed registry of the functions the studies can run on.

Ids: abs, sine, log1p, runge and poly:<c_n,...,c_0> (descending coefficients).
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Optional, Tuple

from ..errors import ScalarError, UnknownFunctionError
from ..models import DomainMap, Polynomial
from ..scalar import Backend, Scalar, backend_of, parse_scalar
from .grid import FunctionHandle

POLY_PREFIX = "poly:"


@dataclass(frozen=True)
class FunctionSpec:
    """
    A registered function.

    Attributes:
        function_id: Registry id
        handle: Scalar-in, scalar-out callable
        interval: Native interval (a, b) as exact or float endpoints
        exact_capable: True when rational input gives rational output
        description: Human-readable formula
    """

    function_id: str
    handle: FunctionHandle
    interval: Tuple[Scalar, Scalar]
    exact_capable: bool
    description: str

    def domain(self, backend: Optional[Backend] = None) -> DomainMap:
        """The map of the native interval onto [0, 1], optionally on another backend."""
        if backend is None:
            return DomainMap(*self.interval)
        return DomainMap.of(*self.interval, backend)

    @property
    def backend(self) -> Backend:
        """Backend the native interval lives on."""
        return backend_of(self.interval[0])


def _abs(x: Scalar) -> Scalar:
    return abs(x)


def _sine(x: Scalar) -> float:
    return math.sin(x)


def _log1p(x: Scalar) -> float:
    if x <= -1:
        raise ValueError(f"ln(1+x) is undefined at x={x}")
    return math.log1p(x)


def _runge(x: Scalar) -> Scalar:
    return 1 / (1 + 25 * x * x)


_REGISTRY: Dict[str, FunctionSpec] = {
    'abs': FunctionSpec('abs', _abs, (Fraction(-1), Fraction(1)), True, "|x| on [-1, 1]"),
    'sine': FunctionSpec('sine', _sine, (-math.pi, math.pi), False, "sin(x) on [-pi, pi]"),
    'log1p': FunctionSpec(
        'log1p', _log1p, (Fraction(-3, 4), Fraction(3, 4)), False, "ln(1+x) on [-3/4, 3/4]"
    ),
    'runge': FunctionSpec('runge', _runge, (Fraction(-1), Fraction(1)), True, "1/(1+25x^2) on [-1, 1]"),
}


def known_ids() -> Tuple[str, ...]:
    return tuple(_REGISTRY) + (f"{POLY_PREFIX}<c_n,...,c_0>",)


def polynomial_handle(polynomial: Polynomial) -> FunctionHandle:
    """
    Horner evaluation that follows the argument's backend.

    Exact coefficients are rounded to floats once when called with a float.
    """
    exact = polynomial.coefficients if polynomial.backend is Backend.EXACT else None
    floats = tuple(float(c) for c in polynomial.coefficients)

    def handle(x: Scalar) -> Scalar:
        if isinstance(x, float) or exact is None:
            coefficients, result = floats, 0.0
        else:
            coefficients, result = exact, Fraction(0)
        for coefficient in coefficients:
            result = result * x + coefficient
        return result

    return handle


def parse_polynomial_id(function_id: str) -> Polynomial:
    """
    Parses "poly:1,0,2" into the exact polynomial x^2 + 2.

    Raises:
        UnknownFunctionError: If the coefficient list is empty
        ScalarError: If a coefficient does not parse
    """
    body = function_id[len(POLY_PREFIX):]
    cells = body.split(",")
    if not body.strip() or any(not cell.strip() for cell in cells):
        raise UnknownFunctionError(function_id, known_ids())
    try:
        return Polynomial(tuple(parse_scalar(cell, Backend.EXACT) for cell in cells), Backend.EXACT)
    except ScalarError as e:
        raise ScalarError(f"Bad coefficient in '{function_id}': {e}") from e


def resolve(function_id: str) -> FunctionSpec:
    """
    Looks up a function id.

    Polynomials are studied on [0, 1] directly.

    Raises:
        UnknownFunctionError: For ids outside the registry
    """
    if function_id.startswith(POLY_PREFIX):
        polynomial = parse_polynomial_id(function_id)
        return FunctionSpec(
            function_id,
            polynomial_handle(polynomial),
            (Fraction(0), Fraction(1)),
            True,
            f"{polynomial.format()} on [0, 1]",
        )
    try:
        return _REGISTRY[function_id]
    except KeyError:
        raise UnknownFunctionError(function_id, known_ids()) from None
