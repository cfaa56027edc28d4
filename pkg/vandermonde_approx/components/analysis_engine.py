"""
Analysis Engine component for the Vandermonde approximation toolkit.

Runs the numerical experiments: sup-norm error scans, convergence studies
over dyadic refinements, and Taylor coefficient recovery from uniform fits.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..errors import (
    ApproximationError,
    ConfigurationError,
    CrossCheckError,
    SampleError,
    StudyError,
)
from ..models import (
    AnalysisConfig,
    ConvergenceReport,
    LevelRecord,
    NumericsConfig,
    Polynomial,
    ReferenceSeries,
    TableFlag,
    TaylorComparison,
    TaylorRow,
)
from ..scalar import Backend, coerce, format_scalar, to_float
from .fixtures import SINE_CLOSED_FORMS, PrintedClosedForm, PrintedPolynomial, PrintedTable
from .grid import FunctionHandle, dyadic, sample, uniform_partition
from .interpolation import fit, fit_report
from .logger import EventStatus, EventType, SystemLogger, get_logger

logger = logging.getLogger(__name__)


def _sine_rule(power: int) -> Fraction:
    if power % 2 == 0:
        return Fraction(0)
    sign = -1 if (power // 2) % 2 else 1
    return Fraction(sign, math.factorial(power))


def _log1p_rule(power: int) -> Fraction:
    if power == 0:
        return Fraction(0)
    return Fraction((-1) ** (power - 1), power)


def reference_sine() -> ReferenceSeries:
    """sin(x) = sum (-1)^k x^(2k+1) / (2k+1)!; reported on odd powers."""
    return ReferenceSeries(
        name='sine',
        center=Fraction(0),
        rule=_sine_rule,
        reported_powers=lambda degree: tuple(range(1, degree + 1, 2)),
        signed=False,
    )


def reference_log1p() -> ReferenceSeries:
    """ln(1+x) = sum (-1)^(n-1) x^n / n; reported on powers 1..5."""
    return ReferenceSeries(
        name='log1p',
        center=Fraction(0),
        rule=_log1p_rule,
        reported_powers=lambda degree: tuple(range(1, min(degree, 5) + 1)),
        signed=True,
    )


def polynomial_reference(name: str, polynomial: Polynomial) -> ReferenceSeries:
    """A reference series read off a fitted polynomial (self-comparison)."""
    exact = polynomial.backend is Backend.EXACT
    return ReferenceSeries(
        name=name,
        center=Fraction(0),
        rule=lambda power: (
            polynomial.coefficient(power) if exact else Fraction(polynomial.coefficient(power))
        ),
        reported_powers=lambda degree: tuple(range(1, degree + 1)),
        signed=True,
    )


def scan_errors(
    f: FunctionHandle,
    polynomial: Polynomial,
    interval: Tuple[Any, Any],
    probe_count: int,
) -> Tuple[np.ndarray, np.ndarray]:
    """
    |f - P| on probe_count + 1 equispaced probes including both endpoints.

    Exact polynomials on exact intervals are probed in exact arithmetic
    (f must then return rationals); everything else is probed in float.

    Returns:
        (probe points, errors) as float arrays

    Raises:
        ValueError: If probe_count < 2
        SampleError: If f fails at a probe
    """
    if probe_count < 2:
        raise ValueError(f"Probe count must be >= 2, got {probe_count}")
    a, b = interval
    exact = (
        polynomial.backend is Backend.EXACT
        and not isinstance(a, float)
        and not isinstance(b, float)
    )
    if exact:
        left, right = coerce(a, Backend.EXACT), coerce(b, Backend.EXACT)
        probes = [(left * (probe_count - j) + right * j) / probe_count for j in range(probe_count + 1)]
        errors = []
        for index, x in enumerate(probes):
            try:
                value = coerce(f(x), Backend.EXACT)
            except (ApproximationError, ArithmeticError, ValueError, TypeError) as e:
                raise SampleError(index, format_scalar(x), str(e)) from e
            approx = Fraction(0)
            for coefficient in polynomial.coefficients:
                approx = approx * x + coefficient
            errors.append(to_float(abs(value - approx)))
        return np.array([to_float(x) for x in probes]), np.array(errors)

    left, right = to_float(coerce(a, Backend.FLOAT)), to_float(coerce(b, Backend.FLOAT))
    xs = np.linspace(left, right, probe_count + 1)
    values = np.empty_like(xs)
    for index, x in enumerate(xs):
        try:
            values[index] = float(f(float(x)))
        except (ApproximationError, ArithmeticError, ValueError, TypeError) as e:
            raise SampleError(index, repr(float(x)), str(e)) from e
    approx = np.polyval(np.array(polynomial.to_float().coefficients, dtype=float), xs)
    return xs, np.abs(values - approx)


def sup_error(
    f: FunctionHandle,
    polynomial: Polynomial,
    interval: Tuple[Any, Any],
    probe_count: int = 2000,
) -> float:
    """
    Dense-probe estimate of sup |f - P| over the interval.

    A lower bound on the true sup norm.
    """
    _, errors = scan_errors(f, polynomial, interval, probe_count)
    return float(errors.max())


def derivative_estimates(comparison: TaylorComparison, degree: int) -> Dict[int, float]:
    """
    k! * a_k for every power of the degree-n fit.

    Estimates of the k-th derivative at the expansion center, without
    differentiating.
    """
    try:
        polynomial = comparison.fits[degree]
    except KeyError:
        raise KeyError(f"No fit of degree {degree} in this comparison") from None
    return {
        power: math.factorial(power) * to_float(polynomial.coefficient(power))
        for power in range(polynomial.declared_degree + 1)
    }


def plot_data(
    f: FunctionHandle,
    report: ConvergenceReport,
    level: int,
    interval: Tuple[Any, Any] = (Fraction(0), Fraction(1)),
) -> List[Tuple[float, float]]:
    """(x, |f - P|) rows on the probe grid of one study level."""
    try:
        polynomial = report.fits[level]
    except KeyError:
        raise KeyError(f"Level {level} is not part of this report") from None
    xs, errors = scan_errors(f, polynomial, interval, report.probe_count)
    return list(zip(xs.tolist(), errors.tolist()))


def _printed_unit(text: str) -> float:
    """One unit in the last printed decimal, at least 1e-6."""
    decimals = len(text.split('.')[1]) if '.' in text else 0
    return 10.0 ** -max(decimals, 6)


def check_printed_table(comparison: TaylorComparison, printed: PrintedTable) -> List[TableFlag]:
    """
    Compares a computed comparison with a printed table.

    A cell reproduces when it lies within one unit of its last printed
    decimal. Cells that do not are returned as flags.
    """
    flags = []
    for label, cells in printed.rows.items():
        for power, text in cells.items():
            if text == "-":
                continue
            if label == 'reference':
                computed: Optional[float] = comparison.row(power).true_coefficient
            else:
                computed = comparison.estimate(int(label[1:]), power)
            if computed is None:
                flags.append(TableFlag(label, power, text, float('nan'), "power above fit degree"))
                continue
            difference = abs(computed - float(text))
            if difference > _printed_unit(text) + 1e-12:
                flags.append(TableFlag(label, power, text, computed, f"off by {difference:.6g}"))
    return flags


def check_printed_polynomial(polynomial: Polynomial, printed: PrintedPolynomial) -> List[TableFlag]:
    """Printed descending coefficients versus a fit, within printed.tolerance."""
    flags = []
    fitted = polynomial.to_float()
    for index, text in enumerate(printed.coefficients):
        power = printed.degree - index
        computed = to_float(fitted.coefficient(power))
        difference = abs(computed - float(text))
        if difference > printed.tolerance:
            flags.append(TableFlag(f"P{printed.degree}", power, text, computed, f"off by {difference:.6g}"))
    return flags


class AnalysisEngine:
    """
    Runs convergence and Taylor studies.

    Responsibilities:
    - Fit on dyadic refinements and measure sup-norm errors
    - Fit on uniform partitions and compare coefficients with a Taylor series
    - Run documented cross-checks and report failures
    """

    def __init__(
        self,
        numerics: Optional[NumericsConfig] = None,
        analysis: Optional[AnalysisConfig] = None,
        system_logger: Optional[SystemLogger] = None
    ):
        """
        Initialize the Analysis Engine.

        Args:
            numerics: Tolerances and backend defaults
            analysis: Probe count, worker count and Taylor degrees
            system_logger: Structured event log; the global one when omitted.
                Failed cross-checks reach its admin notifiers.
        """
        self.logger = logging.getLogger(__name__)
        self.numerics = numerics or NumericsConfig()
        self.analysis = analysis or AnalysisConfig()
        self.system_logger = system_logger or get_logger()

    def _map(self, work: Callable[[int], Any], items: Sequence[int]) -> List[Any]:
        """Runs independent items on the worker pool, results in input order."""
        if self.analysis.max_workers <= 1 or len(items) <= 1:
            return [work(item) for item in items]
        with ThreadPoolExecutor(max_workers=self.analysis.max_workers) as pool:
            return list(pool.map(work, items))

    def convergence_study(
        self,
        f: FunctionHandle,
        base_count: int,
        max_level: int,
        probe_count: Optional[int] = None,
        backend: Backend = Backend.EXACT,
        function_id: str = "f",
    ) -> ConvergenceReport:
        """
        Fits f on dyadic(N_0, k) for k = 0..max_level and measures sup |f - P_k| on [0, 1].

        Args:
            f: Function on [0, 1]
            base_count: N_0 >= 1
            max_level: Last refinement level, >= 0
            probe_count: Probes per level; configuration default when omitted
            backend: Arithmetic for sampling and fitting
            function_id: Label for the report

        Raises:
            ValueError: If base_count < 1 or max_level < 0
            StudyError: If a level fails, annotated with the level
        """
        if base_count < 1:
            raise ValueError(f"Base count must be >= 1, got {base_count}")
        if max_level < 0:
            raise ValueError(f"Max level must be >= 0, got {max_level}")
        probes = probe_count or self.analysis.probe_count
        unit = (Fraction(0), Fraction(1))
        self.logger.info(
            f"Convergence study of {function_id}: N_0={base_count}, levels 0..{max_level}, "
            f"{probes} probes, {backend.value} backend"
        )

        def run_level(level: int) -> Tuple[LevelRecord, Polynomial]:
            partition = dyadic(base_count, level)
            try:
                samples = sample(f, partition.nodes, backend)
                report = fit_report(
                    samples,
                    zero_tolerance=self.numerics.float_zero_tolerance,
                    residual_tolerance=self.numerics.float_residual_tolerance,
                    exact_order_limit=self.numerics.exact_order_limit,
                )
                xs, errors = scan_errors(f, report.polynomial, unit, probes)
            except ApproximationError as e:
                raise StudyError(f"level {level}", str(e)) from e
            worst = int(np.argmax(errors))
            record = LevelRecord(
                level=level,
                node_count=partition.node_count,
                formal_degree=report.degree.formal_degree,
                effective_degree=report.degree.effective_degree,
                sup_error=float(errors[worst]),
                worst_probe=float(xs[worst]),
                residual_norm=report.residual_norm,
                backend=backend.value,
                node_exact=report.node_exact,
            )
            self.logger.debug(f"Level {level}: N_k={partition.node_count}, sup_error={record.sup_error:.6g}")
            return record, report.polynomial

        try:
            results = self._map(run_level, list(range(max_level + 1)))
        except StudyError as e:
            self.system_logger.log_study(
                EventType.CONVERGENCE_STUDY, EventStatus.FAILURE, function_id, error_details=str(e)
            )
            raise
        report = ConvergenceReport(
            function_id=function_id,
            base_count=base_count,
            probe_count=probes,
            records=[record for record, _ in results],
            fits={record.level: polynomial for record, polynomial in results},
        )
        for record in report.records:
            self.system_logger.log_cross_check(
                f"{function_id} level {record.level} node exactness",
                record.node_exact,
                expected="True",
                actual=str(record.node_exact),
            )
        self.system_logger.log_study(
            EventType.CONVERGENCE_STUDY,
            EventStatus.of(not report.failed_levels()),
            function_id,
            {'levels': max_level + 1, 'sup_errors': report.sup_errors(), 'failed_levels': report.failed_levels()},
        )
        return report

    def taylor_estimates(
        self,
        f: FunctionHandle,
        interval: Tuple[Any, Any],
        degrees: Sequence[int],
        reference: ReferenceSeries,
        function_id: Optional[str] = None,
        backend: Backend = Backend.FLOAT,
    ) -> TaylorComparison:
        """
        Fits f on the uniform partition of n + 1 nodes for each degree n and
        tabulates the fitted coefficients against the reference series.

        Powers above a fit's degree get no estimate. When the reference is
        unsigned (sine), estimates and truths are compared as magnitudes.

        Raises:
            ConfigurationError: On an empty degree list, a degree < 1, or an
                odd or too small degree for the sine study
            StudyError: If a fit fails, annotated with the degree
        """
        function_id = function_id or reference.name
        degrees = list(degrees)
        if not degrees:
            raise ConfigurationError("A Taylor study needs at least one degree")
        for degree in degrees:
            if degree < 1:
                raise ConfigurationError(f"Taylor degrees must be >= 1, got {degree}")
            if reference.name == 'sine' and (degree < 2 or degree % 2):
                raise ConfigurationError(
                    f"Sine degrees must be even and >= 2 for symmetric partitions, got {degree}"
                )

        def run_degree(degree: int) -> Polynomial:
            try:
                nodes = uniform_partition(interval[0], interval[1], degree)
                return fit(sample(f, nodes, backend))
            except ApproximationError as e:
                raise StudyError(f"degree {degree}", str(e)) from e

        try:
            fits = self._map(run_degree, degrees)
        except StudyError as e:
            self.system_logger.log_study(
                EventType.TAYLOR_STUDY, EventStatus.FAILURE, function_id, error_details=str(e)
            )
            raise

        magnitudes = not reference.signed
        rows = []
        for power in reference.reported_powers(max(degrees)):
            truth = to_float(reference.coefficient(power))
            if magnitudes:
                truth = abs(truth)
            estimates: List[Optional[float]] = []
            errors: List[Optional[float]] = []
            for degree, polynomial in zip(degrees, fits):
                if power > degree:
                    estimates.append(None)
                    errors.append(None)
                    continue
                value = to_float(polynomial.coefficient(power))
                if magnitudes:
                    value = abs(value)
                estimates.append(value)
                errors.append(abs(value - truth))
            rows.append(TaylorRow(power=power, true_coefficient=truth, estimates=estimates, errors=errors))

        comparison = TaylorComparison(
            function_id=function_id,
            center=to_float(reference.center),
            interval=(_endpoint_text(interval[0]), _endpoint_text(interval[1])),
            degrees=degrees,
            rows=rows,
            magnitudes=magnitudes,
            fits=dict(zip(degrees, fits)),
        )
        self.system_logger.log_study(
            EventType.TAYLOR_STUDY, EventStatus.SUCCESS, function_id, {'degrees': degrees}
        )
        return comparison

    def flag_printed_table(self, comparison: TaylorComparison, printed: PrintedTable) -> bool:
        """
        Attaches printed-table flags to the comparison.

        Returns:
            True when the flags are exactly the table's known misprints
        """
        comparison.flags = check_printed_table(comparison, printed)
        found = {(flag.row, flag.power) for flag in comparison.flags}
        passed = found == set(printed.known_flags)
        self.system_logger.log_cross_check(
            f"{printed.function_id} printed table",
            passed,
            expected=sorted(f"{row}:{power}" for row, power in printed.known_flags),
            actual=sorted(f"{row}:{power}" for row, power in found),
        )
        return passed

    def closed_form_check_p4(self) -> Tuple[float, float]:
        """
        Checks the degree-4 sine fit on [-pi, pi] against 8/(3 pi) x - 8/(3 pi^3) x^3.

        Returns:
            (8/(3 pi), 8/(3 pi^3))

        Raises:
            CrossCheckError: If a magnitude differs by more than 1e-9 or an
                even-power coefficient exceeds 1e-10
        """
        expected = (8 / (3 * math.pi), 8 / (3 * math.pi ** 3))
        polynomial = fit(sample(math.sin, uniform_partition(-math.pi, math.pi, 4), Backend.FLOAT))
        actual = (abs(polynomial.coefficient(1)), abs(polynomial.coefficient(3)))
        checks = [
            ("P4 power-1 coefficient", expected[0], actual[0], 1e-9),
            ("P4 power-3 coefficient", expected[1], actual[1], 1e-9),
        ] + [
            (f"P4 power-{power} coefficient", 0.0, abs(polynomial.coefficient(power)), 1e-10)
            for power in (0, 2, 4)
        ]
        for name, want, got, tolerance in checks:
            passed = abs(want - got) <= tolerance
            self.system_logger.log_cross_check(name, passed, expected=want, actual=got)
            if not passed:
                raise CrossCheckError(name, want, got)
        return expected

    def check_closed_forms(
        self,
        printed: Optional[Dict[int, PrintedClosedForm]] = None,
    ) -> Dict[int, List[TableFlag]]:
        """
        Compares sine fits on [-pi, pi] with printed closed forms, term by term.

        A printed term matches when it lies within 1e-9 + 1e-5 |value| of the
        signed fitted coefficient. One cross-check is logged per degree; it
        passes when the flagged powers are exactly the known misprints.

        Returns:
            degree -> flags, in degree order
        """
        printed = SINE_CLOSED_FORMS if printed is None else printed
        degrees = sorted(printed)

        def run_degree(degree: int) -> Polynomial:
            return fit(sample(math.sin, uniform_partition(-math.pi, math.pi, degree), Backend.FLOAT))

        flags_by_degree = {}
        for degree, polynomial in zip(degrees, self._map(run_degree, degrees)):
            closed_form = printed[degree]
            flags = []
            for power, (text, value) in sorted(closed_form.terms.items(), reverse=True):
                computed = to_float(polynomial.coefficient(power))
                difference = abs(computed - value)
                if difference > 1e-9 + 1e-5 * abs(value):
                    flags.append(TableFlag(f"P{degree}", power, f"{text} = {value:.9g}", computed,
                                           f"off by {difference:.6g}"))
            found = {flag.power for flag in flags}
            self.system_logger.log_cross_check(
                f"P{degree} closed form",
                found == set(closed_form.known_flags),
                expected=sorted(closed_form.known_flags),
                actual=sorted(found),
            )
            flags_by_degree[degree] = flags
        return flags_by_degree


def _endpoint_text(value: Any) -> str:
    backend = Backend.FLOAT if isinstance(value, float) else Backend.EXACT
    return format_scalar(coerce(value, backend))
