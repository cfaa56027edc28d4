"""
Reproduction of the worked interpolation examples.

Each example prints the matrices, inverses, solution vectors and checks of
its text and records the same content as string-valued data. Exact
examples use rational arithmetic throughout; anything involving pi runs on
the float backend.
"""

import logging
import math
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, Sequence

from ..errors import CrossCheckError, UnknownExampleError
from ..models import (
    CrossCheck,
    ExampleRun,
    NodeVector,
    Permutation,
    Polynomial,
    SquareMatrix,
    TaylorComparison,
)
from ..scalar import Backend, Scalar, format_scalar, to_float
from .analysis_engine import (
    AnalysisEngine,
    check_printed_polynomial,
    derivative_estimates,
    reference_log1p,
    reference_sine,
    sup_error,
)
from .fixtures import (
    LOG1P_TABLE,
    SINE_CLOSED_FORMS,
    SINE_TABLE,
    SINE_UNIT_POLYNOMIALS,
    TAYLOR_DEGREES,
    named_nodes,
)
from .function_registry import resolve
from .grid import FunctionHandle, sample
from .interpolation import fit, fit_report
from .logger import EventStatus, EventType, SystemLogger, get_logger
from .report_generator import format_taylor_table
from .vandermonde import (
    NodeSystem,
    build_descending,
    det_elimination,
    determinant_report,
    invert,
    permute_columns,
    permute_rows,
    permute_vector,
    solve,
)

EXAMPLE_IDS = ("2.3", "2.4", "2.5", "2.6", "2.7", "2.8", "perm")


def _vector(values: Sequence[Scalar]) -> str:
    return "(" + ", ".join(format_scalar(value) for value in values) + ")"


def _matrix_lines(name: str, matrix: SquareMatrix) -> List[str]:
    cells = matrix.to_list()
    width = max(len(cell) for row in cells for cell in row)
    lines = [f"{name} ="]
    for row in cells:
        lines.append("  [ " + "  ".join(cell.rjust(width) for cell in row) + " ]")
    return lines


def _rounded(polynomial: Polynomial, digits: int = 6) -> str:
    return "(" + ", ".join(f"{to_float(c):.{digits}f}" for c in polynomial.coefficients) + ")"


def _unit_sine(y: Scalar) -> float:
    return math.sin(2 * math.pi * float(y) - math.pi)


class ExampleRunner:
    """
    Runs worked examples by id.

    Every check is recorded on the run and as a cross-check event; a run
    passes when all of its checks pass.
    """

    def __init__(
        self,
        engine: Optional[AnalysisEngine] = None,
        system_logger: Optional[SystemLogger] = None
    ):
        self.logger = logging.getLogger(__name__)
        self.system_logger = system_logger or get_logger()
        self.engine = engine or AnalysisEngine(system_logger=self.system_logger)
        self._runners: Dict[str, Callable[[ExampleRun], None]] = {
            '2.3': self._linear,
            '2.4': self._quartic,
            '2.5': self._cubic,
            '2.6': self._absolute_value,
            '2.7': self._sine,
            '2.8': self._log1p,
            'perm': self._permutation,
        }

    def run(self, example_id: str) -> ExampleRun:
        """
        Raises:
            UnknownExampleError: For an id outside EXAMPLE_IDS
        """
        try:
            runner = self._runners[example_id]
        except KeyError:
            raise UnknownExampleError(example_id, EXAMPLE_IDS) from None

        title = (runner.__doc__ or "").strip().splitlines()[0]
        run = ExampleRun(example_id=example_id, title=title)
        run.transcript.append(f"Example {example_id}: {title}")
        self.logger.info(f"Running example {example_id}")
        runner(run)

        failed = [check.name for check in run.failed_checks()]
        run.transcript.append(
            f"{len(run.checks)} checks, {len(failed)} failed" + (f": {', '.join(failed)}" if failed else "")
        )
        self.system_logger.log_study(
            EventType.EXAMPLE_RUN,
            EventStatus.of(run.passed),
            f"example {example_id}",
            {'checks': len(run.checks), 'failed': failed},
        )
        return run

    def _check(self, run: ExampleRun, name: str, expected: str, actual: str, passed: Optional[bool] = None) -> bool:
        passed = expected == actual if passed is None else passed
        self.system_logger.log_cross_check(name, passed, expected=expected, actual=actual)
        self._record(run, CrossCheck(name, passed, expected, actual))
        return passed

    def _record(self, run: ExampleRun, check: CrossCheck) -> None:
        run.checks.append(check)
        status = "ok" if check.passed else f"FAILED (expected {check.expected}, got {check.actual})"
        run.transcript.append(f"  check {check.name}: {status}")

    def _polynomial_case(
        self,
        run: ExampleRun,
        f: FunctionHandle,
        node_texts: Sequence[str],
        expected: Sequence[Any],
        expected_inverse: Optional[Sequence[Sequence[str]]] = None,
    ) -> Dict[str, Any]:
        """Fits f on exact nodes and checks the coefficients, both solve routes and the determinant."""
        nodes = NodeVector.of(node_texts, Backend.EXACT)
        label = "{" + ", ".join(nodes.to_list()) + "}"
        samples = sample(f, nodes)
        system = NodeSystem(nodes)
        report = fit_report(samples)
        polynomial = report.polynomial
        determinant = determinant_report(nodes)

        run.transcript.append("")
        run.transcript.append(f"Nodes {label}")
        run.transcript += _matrix_lines("A", system.matrix)
        run.transcript.append(f"Det(A) = {format_scalar(determinant.elimination)}")
        run.transcript += _matrix_lines("A^-1", system.inverse)
        run.transcript.append(f"b = {_vector(samples.values)}")
        run.transcript.append(f"a = A^-1 . b = {_vector(polynomial.coefficients)}")
        run.transcript.append(
            f"P(x) = {polynomial.format()}  (effective degree {report.degree.effective_degree})"
        )

        wanted = Polynomial.of(expected, Backend.EXACT)
        self._check(run, f"coefficients on {label}", _vector(wanted.coefficients), _vector(polynomial.coefficients))
        self._check(
            run,
            f"inverse route on {label}",
            _vector(polynomial.coefficients),
            _vector(system.fit(samples.values).coefficients),
        )
        self._check(run, f"determinant formulas on {label}", "agree", "agree" if determinant.agree else "disagree")
        self._check(run, f"node exactness on {label}", "True", str(report.node_exact))
        if expected_inverse is not None:
            want = SquareMatrix.from_rows(expected_inverse, Backend.EXACT)
            self._check(run, f"inverse on {label}", str(want.to_list()), str(system.inverse.to_list()))

        return {
            'nodes': nodes.to_list(),
            'matrix': system.matrix.to_list(),
            'determinant': format_scalar(determinant.elimination),
            'inverse': system.inverse.to_list(),
            'values': [format_scalar(value) for value in samples.values],
            'coefficients': polynomial.to_list(),
            'polynomial': polynomial.format(),
            'effective_degree': str(report.degree.effective_degree),
        }

    def _linear(self, run: ExampleRun) -> None:
        """f(x) = x + 3 through two, three and four nodes"""
        run.transcript.append("f(x) = x + 3")
        cases = [
            (("-1", "1"), (1, 3)),
            (("0", "2"), (1, 3)),
            (("-1", "0", "1"), (0, 1, 3)),
            (("-1", "0", "1", "2"), (0, 0, 1, 3)),
        ]
        run.data['function'] = "x+3"
        run.data['cases'] = [self._polynomial_case(run, lambda x: x + 3, nodes, expected) for nodes, expected in cases]

    def _quartic(self, run: ExampleRun) -> None:
        """f(x) = x^4 + 2 through two to five nodes"""
        run.transcript.append("f(x) = x^4 + 2")
        cases = [
            (("-1", "1"), (0, 3)),
            (("-1", "0", "1"), (1, 0, 2)),
            (("-1", "-1/3", "1/3", "1"), (0, "10/9", 0, "17/9")),
            (("-1", "-1/2", "0", "1/2", "1"), (1, 0, 0, 0, 2)),
        ]
        run.data['function'] = "x^4+2"
        run.data['cases'] = [self._polynomial_case(run, lambda x: x ** 4 + 2, nodes, expected) for nodes, expected in cases]

    def _cubic(self, run: ExampleRun) -> None:
        """f(x) = 3x^3 + x^2 - 2x + 2: under-, exactly and over-determined fits"""
        run.transcript.append("f(x) = 3x^3 + x^2 - 2x + 2")

        def cubic(x: Scalar) -> Scalar:
            return 3 * x ** 3 + x ** 2 - 2 * x + 2

        inverse_123 = [["1/2", "-1", "1/2"], ["-5/2", "4", "-3/2"], ["3", "-3", "1"]]
        cases = [
            (("1", "2", "3"), (19, -35, 20), inverse_123),
            (("2", "3", "4"), (28, -80, 74), None),
            (("1", "2", "3", "4"), (3, 1, -2, 2), None),
            (("0", "1", "2", "3", "4"), (0, 3, 1, -2, 2), None),
        ]
        run.data['function'] = "3x^3+x^2-2x+2"
        run.data['cases'] = [
            self._polynomial_case(run, cubic, nodes, expected, inverse)
            for nodes, expected, inverse in cases
        ]
        run.transcript.append("Three nodes give different quadratics; four or more recover the cubic.")
        self._check(run, "effective degree on five nodes", "3", run.data['cases'][-1]['effective_degree'])

    def _permutation(self, run: ExampleRun) -> None:
        """Row permutation of a 3x3 system: f(x) = -x^2 + 3x + 5 on -1, 0, 1"""
        nodes = NodeVector.of(["-1", "0", "1"], Backend.EXACT)
        samples = sample(lambda x: -x * x + 3 * x + 5, nodes)
        matrix = build_descending(nodes)
        inverse = invert(matrix)
        solution = solve(matrix, samples.values)

        permutation = Permutation.from_one_based([3, 2, 1])
        permuted = permute_rows(matrix, permutation)
        permuted_rhs = permute_vector(samples.values, permutation)
        permuted_inverse = invert(permuted)
        permuted_solution = solve(permuted, permuted_rhs)
        determinant = det_elimination(matrix)
        permuted_determinant = det_elimination(permuted)

        run.transcript += _matrix_lines("A", matrix)
        run.transcript += _matrix_lines("A^-1", inverse)
        run.transcript.append(f"b = {_vector(samples.values)}, a = {_vector(solution)}")
        run.transcript.append(f"p = {tuple(permutation.to_one_based())}")
        run.transcript += _matrix_lines("A_p", permuted)
        run.transcript += _matrix_lines("A_p^-1", permuted_inverse)
        run.transcript.append(f"b_p = {_vector(permuted_rhs)}, a_p = {_vector(permuted_solution)}")
        run.transcript.append(
            f"Det(A) = {format_scalar(determinant)}, Det(A_p) = {format_scalar(permuted_determinant)}"
        )

        expected_inverse = SquareMatrix.from_rows(
            [["1/2", "-1", "1/2"], ["-1/2", "0", "1/2"], ["0", "1", "0"]], Backend.EXACT
        )
        self._check(run, "inverse of A", str(expected_inverse.to_list()), str(inverse.to_list()))
        self._check(run, "solution", "(-1, 3, 5)", _vector(solution))
        self._check(run, "permuted solution", _vector(solution), _vector(permuted_solution))
        self._check(run, "Det(A_p)", "2", format_scalar(permuted_determinant))
        self._check(run, "Det(A_p) = -Det(A)", format_scalar(-determinant), format_scalar(permuted_determinant))
        self._check(
            run,
            "A_p^-1 is A^-1 with permuted columns",
            str(permute_columns(inverse, permutation).to_list()),
            str(permuted_inverse.to_list()),
        )
        run.data = {
            'function': "-x^2+3x+5",
            'nodes': nodes.to_list(),
            'permutation': [str(image) for image in permutation.to_one_based()],
            'matrix': matrix.to_list(),
            'inverse': inverse.to_list(),
            'solution': [format_scalar(value) for value in solution],
            'permuted_matrix': permuted.to_list(),
            'permuted_inverse': permuted_inverse.to_list(),
            'permuted_rhs': [format_scalar(value) for value in permuted_rhs],
            'permuted_solution': [format_scalar(value) for value in permuted_solution],
            'determinant': format_scalar(determinant),
            'permuted_determinant': format_scalar(permuted_determinant),
        }

    def _absolute_value(self, run: ExampleRun) -> None:
        """|x| on [-1, 1] through 19 nodes (degree 18)"""
        spec = resolve('abs')
        probes = self.engine.analysis.probe_count
        run.data['fits'] = []
        for fixture_id in ('ex2.6-nodes', 'ex2.6-nodes-symmetric'):
            nodes = named_nodes(fixture_id, Backend.EXACT)
            report = fit_report(sample(spec.handle, nodes))
            polynomial = report.polynomial
            error = sup_error(spec.handle, polynomial, spec.interval, probes)

            run.transcript.append("")
            run.transcript.append(f"Nodes {fixture_id}: {', '.join(nodes.to_list())}")
            run.transcript.append(f"Coefficients (descending, rounded): {_rounded(polynomial)}")
            run.transcript.append(f"sup |f - P| over {probes + 1} probes: {error:.6g}")
            self._check(run, f"node exactness on {fixture_id}", "True", str(report.node_exact))
            self._check(run, f"finite sup error on {fixture_id}", "True", str(math.isfinite(error)))
            if fixture_id == 'ex2.6-nodes-symmetric':
                odd = [polynomial.coefficient(power) for power in range(1, polynomial.declared_degree + 1, 2)]
                self._check(run, "odd powers vanish on symmetric nodes", "True", str(all(c == 0 for c in odd)))
            run.data['fits'].append({
                'fixture_id': fixture_id,
                'nodes': nodes.to_list(),
                'coefficients': polynomial.to_list(),
                'node_exact': report.node_exact,
                'sup_error': repr(error),
                'probe_count': str(probes),
            })

    def _table_checks(self, run: ExampleRun, comparison: TaylorComparison, passed: bool, known: List[str]) -> None:
        found = sorted(f"{flag.row}:{flag.power}" for flag in comparison.flags)
        self._record(run, CrossCheck(f"{comparison.function_id} printed table flags", passed, str(known), str(found)))
        for flag in comparison.flags:
            run.transcript.append(f"  flag {flag.row} k={flag.power}: printed {flag.printed}, computed {flag.computed:.9f}")

    def _even_powers_vanish(self, run: ExampleRun, comparison: TaylorComparison) -> None:
        tolerance = self.engine.numerics.float_zero_tolerance
        for degree, polynomial in comparison.fits.items():
            scale = max(abs(c) for c in polynomial.coefficients)
            worst = max(abs(polynomial.coefficient(power)) for power in range(0, degree + 1, 2))
            self._check(
                run,
                f"even powers vanish in P{degree}",
                f"<= {tolerance * scale:.3g}",
                f"{worst:.3g}",
                passed=worst <= tolerance * scale,
            )

    def _sine(self, run: ExampleRun) -> None:
        """sin on [0, 1] and [-pi, pi]: unit-interval fits and Taylor coefficients"""
        run.transcript.append("g(y) = sin(2 pi y - pi) on j/n")
        unit_fits = {}
        for degree, printed in SINE_UNIT_POLYNOMIALS.items():
            polynomial = fit(sample(_unit_sine, named_nodes(f"ex2.7-n{degree}"), Backend.FLOAT))
            flags = check_printed_polynomial(polynomial, printed)
            run.transcript.append(f"P{degree} coefficients (descending): {_rounded(polynomial)}")
            for flag in flags:
                run.transcript.append(f"  flag x^{flag.power}: printed {flag.printed}, computed {flag.computed:.6f}")
            self._record(run, CrossCheck(
                f"printed P{degree} on the unit interval",
                {flag.power for flag in flags} == set(printed.known_flags),
                str(sorted(printed.known_flags)),
                str(sorted(flag.power for flag in flags)),
            ))
            unit_fits[str(degree)] = {
                'coefficients': polynomial.to_list(),
                'flags': [flag.to_dict() for flag in flags],
            }

        comparison = self.engine.taylor_estimates(
            math.sin, (-math.pi, math.pi), TAYLOR_DEGREES, reference_sine(), 'sine', Backend.FLOAT
        )
        passed = self.engine.flag_printed_table(comparison, SINE_TABLE)
        run.transcript.append("")
        run.transcript.append("Taylor coefficient magnitudes of sin on [-pi, pi]")
        run.transcript += format_taylor_table(comparison)
        self._table_checks(run, comparison, passed, sorted(f"{row}:{power}" for row, power in SINE_TABLE.known_flags))

        try:
            closed_form = self.engine.closed_form_check_p4()
            self._record(run, CrossCheck("P4 closed form", True, "8/(3 pi), 8/(3 pi^3)", _vector(closed_form)))
        except CrossCheckError as e:
            closed_form = None
            self._record(run, CrossCheck("P4 closed form", False, str(e.expected), str(e.actual)))

        closed_form_flags = self.engine.check_closed_forms()
        run.transcript.append("")
        run.transcript.append("Printed closed forms on [-pi, pi]")
        for degree, flags in closed_form_flags.items():
            known = SINE_CLOSED_FORMS[degree].known_flags
            for flag in flags:
                run.transcript.append(
                    f"  flag P{degree} x^{flag.power}: printed {flag.printed}, computed {flag.computed:.9g}"
                )
            self._record(run, CrossCheck(
                f"printed P{degree} closed form",
                {flag.power for flag in flags} == set(known),
                str(sorted(known)),
                str(sorted(flag.power for flag in flags)),
            ))

        errors = comparison.row(1).errors
        self._check(
            run,
            "power-1 error decreases with degree",
            "strictly decreasing",
            ", ".join(f"{error:.3g}" for error in errors),
            passed=all(later < earlier for earlier, later in zip(errors, errors[1:])),
        )
        self._even_powers_vanish(run, comparison)
        run.data = {
            'unit_interval_fits': unit_fits,
            'table': comparison.to_dict(),
            'closed_form_p4': None if closed_form is None else [repr(value) for value in closed_form],
            'closed_forms': {
                str(degree): [flag.to_dict() for flag in flags] for degree, flags in closed_form_flags.items()
            },
        }

    def _log1p(self, run: ExampleRun) -> None:
        """ln(1+x) on [-3/4, 3/4]: Taylor coefficients from uniform fits"""
        spec = resolve('log1p')
        comparison = self.engine.taylor_estimates(
            spec.handle, spec.interval, TAYLOR_DEGREES, reference_log1p(), 'log1p', Backend.FLOAT
        )
        passed = self.engine.flag_printed_table(comparison, LOG1P_TABLE)
        run.transcript += format_taylor_table(comparison)
        self._table_checks(run, comparison, passed, sorted(f"{row}:{power}" for row, power in LOG1P_TABLE.known_flags))
        self._check(
            run,
            "k=5 reference coefficient",
            "1/5",
            format_scalar(reference_log1p().coefficient(5)),
        )
        top = max(TAYLOR_DEGREES)
        derivatives = derivative_estimates(comparison, top)
        run.transcript.append(
            f"k! a_k from P{top}: " + ", ".join(f"k={power}: {value:.6f}" for power, value in derivatives.items())
        )
        run.data = {
            'table': comparison.to_dict(),
            'derivative_estimates': {str(power): repr(value) for power, value in derivatives.items()},
            'true_derivatives': {
                str(power): format_scalar(Fraction(math.factorial(power)) * reference_log1p().coefficient(power))
                for power in derivatives
            },
        }
