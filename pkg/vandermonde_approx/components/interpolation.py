"""
Interpolating polynomials through sample sets.

fit() solves A . a = b for the descending Vandermonde matrix A of the
sample nodes. The three degree cases fall out of the node count:

- m + 1 samples of a degree-m polynomial recover it exactly
- more samples than needed give exact zeros in the leading coefficients
- fewer samples give a lower-degree fit that depends on the node choice
"""

import csv
import logging
from fractions import Fraction
from typing import Any, Iterable, List, Optional, Sequence, TextIO, Tuple

from ..errors import BackendMismatchError, InputFormatError, ScalarError
from ..models import (
    DegreeProbeResult,
    EffectiveDegree,
    FitReport,
    NodeVector,
    Polynomial,
    SampleSet,
)
from ..scalar import Backend, Scalar, backend_of, coerce, format_scalar, parse_scalar, to_float, zero
from .grid import FunctionHandle, sample
from .vandermonde import build_descending, residual_norm, solve

logger = logging.getLogger(__name__)

DEFAULT_ZERO_TOLERANCE = 1e-7
DEFAULT_RESIDUAL_TOLERANCE = 1e-8
DEFAULT_EXACT_ORDER_LIMIT = 12


def fit(samples: SampleSet) -> Polynomial:
    """
    Polynomial of formal degree m through m + 1 samples.

    Raises:
        SingularMatrixError: Never for a valid SampleSet, since its nodes
            are distinct
    """
    matrix = build_descending(samples.nodes)
    coefficients = solve(matrix, samples.values)
    logger.debug(f"Fitted degree {len(coefficients) - 1} ({samples.backend.value})")
    return Polynomial(coefficients, samples.backend)


def evaluate(polynomial: Polynomial, x: Any) -> Scalar:
    """
    Nested multiplication (Horner) evaluation.

    Raises:
        BackendMismatchError: If x is a scalar from the other backend
    """
    if isinstance(x, (Fraction, float)):
        found = backend_of(x)
        if found is not polynomial.backend:
            raise BackendMismatchError(polynomial.backend.value, found.value, "evaluate")
    point = coerce(x, polynomial.backend)
    result = zero(polynomial.backend)
    for coefficient in polynomial.coefficients:
        result = result * point + coefficient
    return result


def effective_degree(polynomial: Polynomial, tol: Optional[float] = None) -> EffectiveDegree:
    """
    Highest power with a nonzero coefficient.

    On the exact backend the test is exact and tol is ignored. On the float
    backend a coefficient counts as zero when |c| <= tol * max|c_j|
    (tol defaults to 1e-7). tol is relative to the largest coefficient,
    not an absolute bound. The zero polynomial has effective degree 0.
    """
    formal = polynomial.declared_degree
    if polynomial.backend is Backend.EXACT:
        threshold = 0.0
        nonzero = [c != 0 for c in polynomial.coefficients]
    else:
        relative = DEFAULT_ZERO_TOLERANCE if tol is None else tol
        if relative < 0:
            raise ValueError(f"Zero tolerance must be nonnegative, got {relative}")
        threshold = relative * max(abs(c) for c in polynomial.coefficients)
        nonzero = [abs(c) > threshold for c in polynomial.coefficients]
    effective = next((formal - index for index, flag in enumerate(nonzero) if flag), 0)
    return EffectiveDegree(formal_degree=formal, effective_degree=effective, zero_tolerance=threshold)


def default_probe_node_sets(
    a: Any,
    b: Any,
    degree: int,
    trials: int,
    backend: Backend = Backend.EXACT,
) -> List[NodeVector]:
    """
    Node sets on a uniform grid with step h = (b - a)/(degree + trials).

    Set t (t = 1..trials) is a + (t + j)h for j = 0..degree, so successive
    sets shift by one grid step: on [0, 4] with degree 2 and two trials
    the sets are {1, 2, 3} and {2, 3, 4}.
    """
    left, right = coerce(a, backend), coerce(b, backend)
    if not left < right:
        raise ValueError(f"Probe interval needs a < b, got [{left}, {right}]")
    step = (right - left) / (degree + trials)
    return [
        NodeVector(tuple(left + (offset + j) * step for j in range(degree + 1)), backend)
        for offset in range(1, trials + 1)
    ]


def _same_coefficients(first: Polynomial, second: Polynomial, tol: float) -> bool:
    if first.backend is Backend.EXACT:
        return first.coefficients == second.coefficients
    scale = max(1.0, max(abs(c) for c in first.coefficients))
    return all(abs(x - y) <= tol * scale for x, y in zip(first.coefficients, second.coefficients))


def degree_probe(
    f: FunctionHandle,
    interval: Tuple[Any, Any],
    degree: int,
    trials: int = 2,
    node_sets: Optional[Sequence[NodeVector]] = None,
    backend: Backend = Backend.EXACT,
    tol: float = DEFAULT_ZERO_TOLERANCE,
) -> DegreeProbeResult:
    """
    Fits the same degree through several node sets and compares the fits.

    A function of degree <= the probed degree gives the same coefficients
    on every node set; disagreement shows the true degree is higher.

    Args:
        f: Function handle
        interval: (a, b) used to generate default node sets
        degree: Degree to probe, >= 0
        trials: Number of default node sets, >= 2
        node_sets: Explicit node sets (each of size degree + 1) replacing
            the default ones
        backend: Arithmetic to sample and fit in
        tol: Relative agreement tolerance on the float backend
    """
    if degree < 0:
        raise ValueError(f"Degree must be nonnegative, got {degree}")
    if node_sets is None:
        if trials < 2:
            raise ValueError(f"A degree probe needs at least 2 trials, got {trials}")
        node_sets = default_probe_node_sets(interval[0], interval[1], degree, trials, backend)
    node_sets = list(node_sets)
    if len(node_sets) < 2:
        raise ValueError(f"A degree probe needs at least 2 node sets, got {len(node_sets)}")
    for nodes in node_sets:
        if len(nodes) != degree + 1:
            raise ValueError(f"Node set of size {len(nodes)} cannot probe degree {degree}")
    polynomials = [fit(sample(f, nodes, backend)) for nodes in node_sets]
    consistent = all(_same_coefficients(polynomials[0], other, tol) for other in polynomials[1:])
    logger.info(f"Degree {degree} probe over {len(node_sets)} node sets: consistent={consistent}")
    return DegreeProbeResult(
        degree=degree,
        consistent=consistent,
        node_sets=node_sets,
        polynomials=polynomials,
    )


def fit_report(
    samples: SampleSet,
    zero_tolerance: float = DEFAULT_ZERO_TOLERANCE,
    residual_tolerance: float = DEFAULT_RESIDUAL_TOLERANCE,
    exact_order_limit: int = DEFAULT_EXACT_ORDER_LIMIT,
) -> FitReport:
    """
    Fits and checks: effective degree, residual, node exactness.

    On the float backend the fit is node-exact when every
    |P(x_i) - b_i| <= residual_tolerance * max(1, max|b_i|).
    """
    polynomial = fit(samples)
    degree = effective_degree(polynomial, zero_tolerance)
    residual = residual_norm(build_descending(samples.nodes), polynomial.coefficients, samples.values)
    deviations = [evaluate(polynomial, x) - b for x, b in samples.pairs()]
    max_deviation = max(to_float(abs(d)) for d in deviations)
    notes = []
    if samples.backend is Backend.EXACT:
        node_exact = all(d == 0 for d in deviations)
        warning = False
    else:
        scale = max(1.0, max(abs(b) for b in samples.values))
        node_exact = max_deviation <= residual_tolerance * scale
        warning = len(samples) > exact_order_limit
        if warning:
            notes.append(
                f"order {len(samples)} exceeds {exact_order_limit}; float Vandermonde "
                f"systems this large are ill-conditioned, use the exact backend"
            )
            logger.warning(notes[-1])
    return FitReport(
        polynomial=polynomial,
        degree=degree,
        residual_norm=residual,
        node_exact=node_exact,
        max_node_deviation=max_deviation,
        conditioning_warning=warning,
        notes=notes,
    )


def _read_rows(stream: TextIO) -> Tuple[List[str], List[Tuple[int, List[str]]]]:
    reader = csv.reader(stream)
    header: Optional[List[str]] = None
    rows = []
    for row in reader:
        line = reader.line_num
        if not row or all(not cell.strip() for cell in row):
            continue
        if header is None:
            header = [cell.strip().lower() for cell in row]
            continue
        rows.append((line, row))
    if header is None:
        raise InputFormatError(1, "empty input; expected header 'x,y'")
    return header, rows


def _parse_cell(text: str, backend: Backend, line: int, column: str) -> Scalar:
    try:
        return parse_scalar(text, backend)
    except ScalarError as e:
        raise InputFormatError(line, f"column {column}: {e}") from e


def read_samples_csv(stream: TextIO, backend: Backend = Backend.EXACT) -> SampleSet:
    """
    Reads the `x,y` sample format.

    Raises:
        InputFormatError: On a wrong header, wrong cell count or bad scalar,
            with the 1-based line number
        NodeOrderError: If the x column is not strictly increasing
    """
    header, rows = _read_rows(stream)
    if header != ['x', 'y']:
        raise InputFormatError(1, f"expected header 'x,y', got '{','.join(header)}'")
    if not rows:
        raise InputFormatError(2, "no samples")
    nodes, values = [], []
    for line, row in rows:
        if len(row) != 2:
            raise InputFormatError(line, f"expected 2 cells, got {len(row)}")
        nodes.append(_parse_cell(row[0], backend, line, 'x'))
        values.append(_parse_cell(row[1], backend, line, 'y'))
    return SampleSet(NodeVector(tuple(nodes), backend), tuple(values))


def read_nodes_csv(stream: TextIO, backend: Backend = Backend.EXACT) -> NodeVector:
    """Reads the x column of an `x` or `x,y` file."""
    header, rows = _read_rows(stream)
    if not header or header[0] != 'x' or header not in (['x'], ['x', 'y']):
        raise InputFormatError(1, f"expected header 'x' or 'x,y', got '{','.join(header)}'")
    if not rows:
        raise InputFormatError(2, "no nodes")
    nodes = []
    for line, row in rows:
        if len(row) != len(header):
            raise InputFormatError(line, f"expected {len(header)} cells, got {len(row)}")
        nodes.append(_parse_cell(row[0], backend, line, 'x'))
    return NodeVector(tuple(nodes), backend)


def parse_inline_nodes(text: str, backend: Backend = Backend.EXACT) -> NodeVector:
    """Parses "-1,0,1" style node lists."""
    cells = text.split(",")
    if not text.strip() or any(not cell.strip() for cell in cells):
        raise InputFormatError(1, f"empty entry in node list '{text}'")
    return NodeVector(tuple(parse_scalar(cell, backend) for cell in cells), backend)


def write_samples_csv(stream: TextIO, nodes: Iterable[Scalar], values: Optional[Iterable[Scalar]] = None) -> None:
    """Writes `x,y` rows, or a lone `x` column when values are omitted."""
    writer = csv.writer(stream, lineterminator='\n')
    if values is None:
        writer.writerow(['x'])
        for x in nodes:
            writer.writerow([format_scalar(x)])
        return
    writer.writerow(['x', 'y'])
    for x, y in zip(nodes, values):
        writer.writerow([format_scalar(x), format_scalar(y)])
