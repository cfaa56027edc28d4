"""
Polynomial and sample models.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Optional, Tuple

from ..errors import DimensionMismatchError, ScalarError
from ..scalar import Backend, Scalar, as_backend, common_backend, format_scalar, zero
from .matrix import NodeVector


@dataclass(frozen=True)
class Polynomial:
    """
    Dense polynomial in descending power order (a_n, ..., a_1, a_0).

    The declared degree is formal: leading coefficients may be zero, which is
    exactly what fitting a degree-n polynomial through more than n+1 nodes
    produces.

    Attributes:
        coefficients: a_n first, a_0 last
        backend: Backend shared by every coefficient
    """

    coefficients: Tuple[Scalar, ...]
    backend: Backend

    def __post_init__(self):
        if len(self.coefficients) < 1:
            raise DimensionMismatchError("A polynomial needs at least one coefficient")
        found = common_backend(self.coefficients, "polynomial")
        if found is not self.backend:
            raise ScalarError(
                f"Polynomial declared {self.backend.value} but holds {found.value} coefficients"
            )

    @classmethod
    def of(cls, coefficients: Iterable[Any], backend: Optional[Backend] = None) -> 'Polynomial':
        """Builds a polynomial from descending ints, strings or scalars."""
        raw = list(coefficients)
        if backend is None:
            backend = Backend.FLOAT if any(isinstance(v, float) for v in raw) else Backend.EXACT
        return cls(as_backend(raw, backend), backend)

    @property
    def declared_degree(self) -> int:
        return len(self.coefficients) - 1

    def coefficient(self, power: int) -> Scalar:
        """Coefficient of x^power; zero above the declared degree."""
        if power < 0:
            raise ValueError(f"Power must be nonnegative, got {power}")
        if power > self.declared_degree:
            return zero(self.backend)
        return self.coefficients[self.declared_degree - power]

    def ascending(self) -> Tuple[Scalar, ...]:
        """Coefficients a_0, a_1, ..., a_n (the B-matrix view)."""
        return tuple(reversed(self.coefficients))

    def padded(self, degree: int) -> 'Polynomial':
        """Same polynomial with zero leading coefficients up to the given formal degree."""
        if degree < self.declared_degree:
            raise DimensionMismatchError(
                f"Cannot pad degree {self.declared_degree} down to {degree}"
            )
        padding = (zero(self.backend),) * (degree - self.declared_degree)
        return Polynomial(padding + self.coefficients, self.backend)

    def to_float(self) -> 'Polynomial':
        if self.backend is Backend.FLOAT:
            return self
        return Polynomial(as_backend(self.coefficients, Backend.FLOAT), Backend.FLOAT)

    def to_list(self) -> List[str]:
        return [format_scalar(value) for value in self.coefficients]

    def format(self, variable: str = "x") -> str:
        """
        Renders every term, zeros included: "0x^4+3x^3+x^2-2x+2".
        """
        terms = []
        for index, value in enumerate(self.coefficients):
            power = self.declared_degree - index
            text = format_scalar(value)
            negative = text.startswith("-")
            magnitude = text[1:] if negative else text
            if power > 0 and magnitude == "1":
                magnitude = ""
            elif power > 0 and isinstance(value, Fraction) and value.denominator != 1:
                magnitude = f"{magnitude} "
            if power == 0:
                body = magnitude
            elif power == 1:
                body = f"{magnitude}{variable}"
            else:
                body = f"{magnitude}{variable}^{power}"
            sign = "-" if negative else ("+" if terms else "")
            terms.append(f"{sign}{body}")
        return "".join(terms)


@dataclass(frozen=True)
class SampleSet:
    """
    Paired nodes and values b_i = f(x_i).

    Attributes:
        nodes: Strictly increasing nodes
        values: One value per node, on the nodes' backend
    """

    nodes: NodeVector
    values: Tuple[Scalar, ...]

    def __post_init__(self):
        if len(self.values) != len(self.nodes):
            raise DimensionMismatchError(
                f"{len(self.nodes)} nodes but {len(self.values)} values"
            )
        found = common_backend(self.values, "sample values")
        if found is not self.nodes.backend:
            raise ScalarError(
                f"Sample values are {found.value} but nodes are {self.nodes.backend.value}"
            )

    @classmethod
    def of(cls, pairs: Iterable[Tuple[Any, Any]], backend: Optional[Backend] = None) -> 'SampleSet':
        """Builds a sample set from (x, y) pairs of ints, strings or scalars."""
        raw = list(pairs)
        if backend is None:
            backend = (
                Backend.FLOAT
                if any(isinstance(v, float) for pair in raw for v in pair)
                else Backend.EXACT
            )
        nodes = NodeVector.of((x for x, _ in raw), backend)
        return cls(nodes, as_backend((y for _, y in raw), backend))

    @property
    def backend(self) -> Backend:
        return self.nodes.backend

    def __len__(self) -> int:
        return len(self.values)

    def pairs(self) -> List[Tuple[Scalar, Scalar]]:
        return list(zip(self.nodes.nodes, self.values))


@dataclass(frozen=True)
class EffectiveDegree:
    """
    Formal versus effective degree of a fitted polynomial.

    Attributes:
        formal_degree: Declared degree (coefficient count - 1)
        effective_degree: Highest power whose coefficient is nonzero (or above
            the zero tolerance); 0 for the zero polynomial
        zero_tolerance: Absolute threshold that was applied (0 on the exact backend)
    """

    formal_degree: int
    effective_degree: int
    zero_tolerance: float

    def __post_init__(self):
        if self.effective_degree > self.formal_degree:
            raise ValueError(
                f"Effective degree {self.effective_degree} exceeds formal degree {self.formal_degree}"
            )
        if self.zero_tolerance < 0:
            raise ValueError(f"Zero tolerance must be nonnegative, got {self.zero_tolerance}")


@dataclass
class FitReport:
    """
    Result of fitting one sample set, with its checks.

    Attributes:
        polynomial: The interpolant
        degree: Formal/effective degree summary
        residual_norm: ||A.a - b||_inf as a float (0.0 on the exact backend)
        node_exact: True when P(x_i) = b_i holds exactly (exact backend) or
            within the residual tolerance (float backend)
        max_node_deviation: max |P(x_i) - b_i| as a float
        conditioning_warning: Float fit above the configured exact-order limit
    """

    polynomial: Polynomial
    degree: EffectiveDegree
    residual_norm: float
    node_exact: bool
    max_node_deviation: float
    conditioning_warning: bool = False
    notes: List[str] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'backend': self.polynomial.backend.value,
            'coefficients': self.polynomial.to_list(),
            'polynomial': self.polynomial.format(),
            'formal_degree': str(self.degree.formal_degree),
            'effective_degree': str(self.degree.effective_degree),
            'zero_tolerance': repr(self.degree.zero_tolerance),
            'residual_norm': repr(self.residual_norm),
            'node_exact': self.node_exact,
            'max_node_deviation': repr(self.max_node_deviation),
            'conditioning_warning': self.conditioning_warning,
            'notes': list(self.notes),
        }


@dataclass
class DegreeProbeResult:
    """
    Fits of one degree through several node sets of the same function.

    Attributes:
        degree: Formal degree of every fit
        consistent: True when all fits agree (exactly, or within tolerance on float)
        node_sets: The node sets that were fitted, in order
        polynomials: One fit per node set
    """

    degree: int
    consistent: bool
    node_sets: List[NodeVector]
    polynomials: List[Polynomial]

    def to_dict(self) -> Dict[str, Any]:
        return {
            'degree': str(self.degree),
            'consistent': self.consistent,
            'fits': [
                {'nodes': nodes.to_list(), 'coefficients': polynomial.to_list()}
                for nodes, polynomial in zip(self.node_sets, self.polynomials)
            ],
        }
