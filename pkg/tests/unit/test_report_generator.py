"""
Unit tests for the Report Generator component.
"""

import json
import math
from fractions import Fraction

import pytest

from vandermonde_approx.components import AnalysisEngine, ReportGenerator
from vandermonde_approx.components.analysis_engine import reference_sine
from vandermonde_approx.components.function_registry import polynomial_handle
from vandermonde_approx.components.interpolation import degree_probe, fit_report
from vandermonde_approx.components.report_generator import dump_json, format_taylor_table, taylor_frame
from vandermonde_approx.components.vandermonde import determinant_report
from vandermonde_approx.models import AnalysisConfig, CrossCheck, ExampleRun, OutputConfig, Polynomial


@pytest.fixture
def engine(system_logger):
    return AnalysisEngine(analysis=AnalysisConfig(probe_count=20, max_workers=1), system_logger=system_logger)


@pytest.fixture
def convergence_report(engine):
    return engine.convergence_study(polynomial_handle(Polynomial.of([1, 1])), 1, 1, function_id="poly:1,1")


@pytest.fixture
def sine_comparison(engine):
    return engine.taylor_estimates(math.sin, (-math.pi, math.pi), [4, 6], reference_sine())


class TestReportGenerator:
    """Test suite for ReportGenerator component."""

    def test_json_determinant(self, symmetric_three_nodes):
        """Test that JSON numbers are strings."""
        text = ReportGenerator().render(determinant_report(symmetric_three_nodes), "json")
        data = json.loads(text)
        assert data['product'] == "2"
        assert data['elimination'] == "-2"
        assert data['agree'] is True

    def test_json_is_stable(self, sine_comparison):
        """Test that re-dumping parsed JSON output is byte-identical."""
        text = ReportGenerator().render(sine_comparison, "json")
        assert dump_json(json.loads(text)) == text

    def test_csv_determinant(self, symmetric_three_nodes):
        """Test the quantity/value layout."""
        text = ReportGenerator().render(determinant_report(symmetric_three_nodes), "csv")
        lines = text.splitlines()
        assert lines[0] == "quantity,value"
        assert "elimination,-2" in lines
        assert "agree,true" in lines

    def test_csv_convergence(self, convergence_report):
        """Test one CSV row per level."""
        lines = ReportGenerator().render(convergence_report, "csv").splitlines()
        assert lines[0] == "level,node_count,formal_degree,effective_degree,sup_error,worst_probe,residual_norm,backend"
        assert len(lines) == 3
        assert lines[1].startswith("0,1,1,1,0,")

    def test_text_fit(self, cubic_samples):
        """Test the aligned text table of a fit."""
        text = ReportGenerator().render(fit_report(cubic_samples), "text")
        assert text.splitlines()[0].split() == ["power", "coefficient"]
        assert len(text.splitlines()) == 6

    def test_default_format_from_configuration(self, symmetric_three_nodes):
        """Test that the configured format applies when none is given."""
        generator = ReportGenerator(OutputConfig(format="csv"))
        assert generator.render(determinant_report(symmetric_three_nodes)).startswith("quantity,value")

    def test_unknown_format(self, symmetric_three_nodes):
        """Test that unknown formats are rejected."""
        with pytest.raises(ValueError):
            ReportGenerator().render(determinant_report(symmetric_three_nodes), "xml")

    def test_example_run_text_is_transcript(self):
        """Test that example runs print their transcript as text."""
        run = ExampleRun("2.3", "f(x) = x + 3", transcript=["line one", "line two"])
        assert ReportGenerator().render(run, "text") == "line one\nline two\n"

    def test_example_run_csv_lists_checks(self):
        """Test that example runs tabulate their checks as CSV."""
        run = ExampleRun("perm", "title", checks=[CrossCheck("Det(A_p)", True, "2", "2")])
        lines = ReportGenerator().render(run, "csv").splitlines()
        assert lines == ["name,passed,expected,actual", "Det(A_p),True,2,2"]

    def test_probe_result(self):
        """Test the degree probe table."""
        result = degree_probe(lambda x: x * x, (0, 3), 1)
        lines = ReportGenerator().render(result, "csv").splitlines()
        assert lines[0] == "node_set,nodes,coefficients"
        assert len(lines) == 3


class TestTaylorTables:
    """Tests for Taylor comparison tables."""

    def test_taylor_frame_columns(self, sine_comparison):
        """Test one estimate and one error column per degree."""
        frame = taylor_frame(sine_comparison)
        assert list(frame.columns) == ['power', 'reference', 'P4', 'error_P4', 'P6', 'error_P6']
        assert list(frame['power']) == [1, 3, 5]

    def test_missing_estimates_print_as_dash(self, sine_comparison):
        """Test that powers above a degree show a dash."""
        lines = format_taylor_table(sine_comparison)
        assert lines[-1].split()[0] == "5"
        assert "-" in lines[-1].split()

    def test_text_render(self, sine_comparison):
        """Test that text output carries the header and every power."""
        text = ReportGenerator().render(sine_comparison, "text")
        assert len(text.splitlines()) == 4


class TestPlotData:
    """Tests for plot data export."""

    def test_write_plot_data(self, tmp_path, convergence_report):
        """Test one x,error file per level."""
        f = polynomial_handle(Polynomial.of([1, 1]))
        paths = ReportGenerator().write_plot_data(tmp_path / "plots", f, convergence_report)

        assert [path.name for path in paths] == ["level_0.csv", "level_1.csv"]
        lines = paths[1].read_text().splitlines()
        assert lines[0] == "x,error"
        assert len(lines) == 22
        assert lines[-1] == "1,0"
