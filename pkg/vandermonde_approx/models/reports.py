"""
Report models for determinant checks, convergence studies and Taylor studies.
"""

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, Tuple

from ..errors import DimensionMismatchError
from ..scalar import Scalar, format_scalar
from .matrix import NodeVector
from .polynomial import Polynomial


def _number(value: Optional[float]) -> Optional[str]:
    return None if value is None else repr(float(value))


@dataclass
class DeterminantReport:
    """
    Determinant of a Vandermonde matrix computed three independent ways.

    Attributes:
        nodes: Nodes the matrix was built from
        orientation: "descending" (matrix A) or "ascending" (matrix B)
        product: Product formula, the determinant of the ascending matrix
        elimination: Elimination determinant of the oriented matrix
        inductive: Column-reduction determinant of the ascending matrix
        sign: Sign relating the descending determinant to the ascending one
        agree: True when all three computations are consistent
    """

    nodes: NodeVector
    orientation: str
    product: Scalar
    elimination: Scalar
    inductive: Scalar
    sign: int
    agree: bool

    def to_dict(self) -> Dict[str, Any]:
        return {
            'nodes': self.nodes.to_list(),
            'backend': self.nodes.backend.value,
            'orientation': self.orientation,
            'order': str(len(self.nodes)),
            'product': format_scalar(self.product),
            'elimination': format_scalar(self.elimination),
            'inductive': format_scalar(self.inductive),
            'sign': str(self.sign),
            'agree': self.agree,
        }


@dataclass
class LevelRecord:
    """
    One refinement level of a convergence study.

    Attributes:
        level: k
        node_count: N_k (segments); the fit uses N_k + 1 nodes
        formal_degree: Degree of the fitted polynomial (N_k)
        effective_degree: Highest nonzero coefficient power
        sup_error: Dense-probe estimate of max |f - P|
        worst_probe: Probe point where sup_error was attained
        residual_norm: ||A.a - b||_inf (0.0 on the exact backend)
        backend: "exact" or "float"
        node_exact: Whether the fit reproduced every sample within tolerance
    """

    level: int
    node_count: int
    formal_degree: int
    effective_degree: int
    sup_error: float
    worst_probe: float
    residual_norm: float
    backend: str
    node_exact: bool = True

    def __post_init__(self):
        if self.sup_error < 0:
            raise ValueError(f"sup_error must be nonnegative, got {self.sup_error}")

    def to_dict(self) -> Dict[str, Any]:
        return {
            'level': str(self.level),
            'node_count': str(self.node_count),
            'formal_degree': str(self.formal_degree),
            'effective_degree': str(self.effective_degree),
            'sup_error': _number(self.sup_error),
            'worst_probe': _number(self.worst_probe),
            'residual_norm': _number(self.residual_norm),
            'backend': self.backend,
            'node_exact': self.node_exact,
        }


@dataclass
class ConvergenceReport:
    """Sup-norm errors of interpolants on successive dyadic refinements."""

    function_id: str
    base_count: int
    probe_count: int
    records: List[LevelRecord] = field(default_factory=list)
    fits: Dict[int, Polynomial] = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        levels = [record.level for record in self.records]
        if any(later <= earlier for earlier, later in zip(levels, levels[1:])):
            raise ValueError(f"Levels must be strictly increasing, got {levels}")

    def sup_errors(self) -> List[float]:
        return [record.sup_error for record in self.records]

    def is_nonincreasing(self) -> bool:
        errors = self.sup_errors()
        return all(later <= earlier for earlier, later in zip(errors, errors[1:]))

    def is_increasing(self) -> bool:
        errors = self.sup_errors()
        return all(later > earlier for earlier, later in zip(errors, errors[1:]))

    def failed_levels(self) -> List[int]:
        """Levels whose fit did not reproduce its samples."""
        return [record.level for record in self.records if not record.node_exact]

    def to_dict(self) -> Dict[str, Any]:
        return {
            'function_id': self.function_id,
            'base_count': str(self.base_count),
            'probe_count': str(self.probe_count),
            'records': [record.to_dict() for record in self.records],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


@dataclass(frozen=True)
class ReferenceSeries:
    """
    Exact Taylor coefficients of a function about a center.

    Attributes:
        name: Function id the series belongs to
        center: Expansion center x_0
        rule: power k -> exact coefficient
        reported_powers: Powers a study reports for a fit of the given degree
    """

    name: str
    center: Fraction
    rule: Callable[[int], Fraction]
    reported_powers: Callable[[int], Tuple[int, ...]]
    signed: bool = True

    def coefficient(self, power: int) -> Fraction:
        if power < 0:
            raise ValueError(f"Power must be nonnegative, got {power}")
        return self.rule(power)


@dataclass
class TaylorRow:
    """
    One power of a Taylor comparison.

    estimates[i] and errors[i] belong to degrees[i] of the owning comparison;
    None marks a power above that degree.
    """

    power: int
    true_coefficient: float
    estimates: List[Optional[float]]
    errors: List[Optional[float]]

    def to_dict(self) -> Dict[str, Any]:
        return {
            'power': str(self.power),
            'true_coefficient': _number(self.true_coefficient),
            'estimates': [_number(value) for value in self.estimates],
            'errors': [_number(value) for value in self.errors],
        }


@dataclass
class TableFlag:
    """A printed table cell that disagrees with the computed value."""

    row: str
    power: int
    printed: str
    computed: float
    note: str = ""

    def to_dict(self) -> Dict[str, Any]:
        return {
            'row': self.row,
            'power': str(self.power),
            'printed': self.printed,
            'computed': _number(self.computed),
            'note': self.note,
        }


@dataclass
class TaylorComparison:
    """
    Fitted coefficients versus the true Taylor coefficients.

    Attributes:
        function_id: Function that was fitted
        center: Expansion center x_0
        interval: (a, b) the uniform partitions cover, as strings
        degrees: Fit degrees, one estimate column each
        rows: One row per reported power
        magnitudes: Estimates and truths are compared as absolute values
        flags: Printed cells that did not reproduce
    """

    function_id: str
    center: float
    interval: Tuple[str, str]
    degrees: List[int]
    rows: List[TaylorRow]
    magnitudes: bool = False
    flags: List[TableFlag] = field(default_factory=list)
    fits: Dict[int, Polynomial] = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        for row in self.rows:
            if len(row.estimates) != len(self.degrees) or len(row.errors) != len(self.degrees):
                raise DimensionMismatchError(
                    f"Row for power {row.power} has {len(row.estimates)} estimates "
                    f"for {len(self.degrees)} degrees"
                )

    def row(self, power: int) -> TaylorRow:
        for candidate in self.rows:
            if candidate.power == power:
                return candidate
        raise KeyError(power)

    def estimate(self, degree: int, power: int) -> Optional[float]:
        return self.row(power).estimates[self.degrees.index(degree)]

    def to_dict(self) -> Dict[str, Any]:
        return {
            'function_id': self.function_id,
            'center': _number(self.center),
            'interval': list(self.interval),
            'degrees': [str(degree) for degree in self.degrees],
            'magnitudes': self.magnitudes,
            'rows': [row.to_dict() for row in self.rows],
            'flags': [flag.to_dict() for flag in self.flags],
            'polynomials': {str(degree): self.fits[degree].to_list() for degree in self.degrees if degree in self.fits},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


@dataclass
class CrossCheck:
    """One documented check of a worked example, with both sides as text."""

    name: str
    passed: bool
    expected: str
    actual: str

    def to_dict(self) -> Dict[str, Any]:
        return {
            'name': self.name,
            'passed': self.passed,
            'expected': self.expected,
            'actual': self.actual,
        }


@dataclass
class ExampleRun:
    """
    Reproduction of one worked example.

    Attributes:
        example_id: "2.3" ... "2.8" or "perm"
        title: One-line summary
        transcript: Human-readable lines: matrices, inverses, solutions, checks
        data: Machine-readable counterpart of the transcript (strings only)
        checks: Every cross-check that was run
    """

    example_id: str
    title: str
    transcript: List[str] = field(default_factory=list)
    data: Dict[str, Any] = field(default_factory=dict)
    checks: List[CrossCheck] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def failed_checks(self) -> List[CrossCheck]:
        return [check for check in self.checks if not check.passed]

    def to_dict(self) -> Dict[str, Any]:
        return {
            'example_id': self.example_id,
            'title': self.title,
            'passed': self.passed,
            'checks': [check.to_dict() for check in self.checks],
            'data': self.data,
            'transcript': list(self.transcript),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)
