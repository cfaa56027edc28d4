"""
Unit tests for the worked-example runner.
"""

import json

import pytest

from vandermonde_approx.components import EXAMPLE_IDS, AnalysisEngine, EventType, ExampleRunner
from vandermonde_approx.errors import UnknownExampleError
from vandermonde_approx.models import AnalysisConfig


@pytest.fixture
def runner(system_logger):
    engine = AnalysisEngine(analysis=AnalysisConfig(probe_count=400, max_workers=2), system_logger=system_logger)
    return ExampleRunner(engine=engine, system_logger=system_logger)


class TestExactExamples:
    """Tests for the rational examples."""

    def test_linear(self, runner):
        """Test x + 3 gains zero leading coefficients on extra nodes."""
        run = runner.run("2.3")
        assert run.passed
        assert [case['coefficients'] for case in run.data['cases']] == [
            ["1", "3"], ["1", "3"], ["0", "1", "3"], ["0", "0", "1", "3"],
        ]

    def test_quartic(self, runner):
        """Test x^4 + 2 on two to five nodes."""
        run = runner.run("2.4")
        assert run.passed
        assert run.data['cases'][2]['coefficients'] == ["0", "10/9", "0", "17/9"]
        assert run.data['cases'][3]['effective_degree'] == "4"

    def test_cubic(self, runner):
        """Test the under-, exactly and over-determined cubic fits."""
        run = runner.run("2.5")
        assert run.passed
        first = run.data['cases'][0]
        assert first['inverse'] == [["1/2", "-1", "1/2"], ["-5/2", "4", "-3/2"], ["3", "-3", "1"]]
        assert first['coefficients'] == ["19", "-35", "20"]
        assert run.data['cases'][-1]['polynomial'] == "0x^4+3x^3+x^2-2x+2"

    def test_permutation(self, runner):
        """Test the permuted 3x3 system."""
        run = runner.run("perm")
        assert run.passed
        assert run.data['solution'] == ["-1", "3", "5"]
        assert run.data['permuted_solution'] == ["-1", "3", "5"]
        assert run.data['determinant'] == "-2"
        assert run.data['permuted_determinant'] == "2"

    @pytest.mark.slow
    def test_absolute_value(self, runner):
        """Test the degree-18 fits of |x|."""
        run = runner.run("2.6")
        assert run.passed
        assert [fit['fixture_id'] for fit in run.data['fits']] == ['ex2.6-nodes', 'ex2.6-nodes-symmetric']
        assert all(len(fit['coefficients']) == 19 for fit in run.data['fits'])


class TestFloatExamples:
    """Tests for the examples that involve pi or logarithms."""

    def test_sine(self, runner):
        """Test the sine example and its printed-value flags."""
        run = runner.run("2.7")
        assert run.passed
        flags = run.data['unit_interval_fits']['8']['flags']
        assert [flag['power'] for flag in flags] == ["2"]
        assert run.data['unit_interval_fits']['6']['flags'] == []
        assert [(flag['row'], flag['power']) for flag in run.data['table']['flags']] == [('P4', "3")]
        assert run.data['closed_form_p4'] is not None
        closed_forms = run.data['closed_forms']
        assert {degree: [flag['power'] for flag in flags] for degree, flags in closed_forms.items()} == {
            "4": ["3"], "6": ["3", "1"], "8": ["3"], "10": ["9"],
        }

    def test_log1p(self, runner):
        """Test the ln(1+x) example and its derivative estimates."""
        run = runner.run("2.8")
        assert run.passed
        flagged = {(flag['row'], flag['power']) for flag in run.data['table']['flags']}
        assert flagged == {('P4', "2"), ('reference', "5")}
        assert run.data['true_derivatives']['3'] == "2"
        assert abs(float(run.data['derivative_estimates']['1']) - 1.0) < 1e-3


class TestRunner:
    """Tests for runner behaviour shared by every example."""

    def test_unknown_example(self, runner):
        """Test that unknown ids list the known ones."""
        with pytest.raises(UnknownExampleError) as info:
            runner.run("9.9")
        assert "perm" in str(info.value)

    def test_transcript_frame(self, runner):
        """Test the transcript header and summary lines."""
        run = runner.run("2.3")
        assert run.transcript[0] == "Example 2.3: f(x) = x + 3 through two, three and four nodes"
        assert run.transcript[-1] == f"{len(run.checks)} checks, 0 failed"

    def test_transcript_is_deterministic(self, runner):
        """Test that two runs give the same transcript."""
        assert runner.run("perm").transcript == runner.run("perm").transcript

    def test_json_round_trip(self, runner):
        """Test that example JSON re-dumps byte-identically."""
        text = runner.run("2.5").to_json()
        assert json.dumps(json.loads(text), indent=2) == text

    def test_run_is_logged(self, runner, system_logger):
        """Test that each run ends with an example event."""
        runner.run("2.4")
        event = system_logger.events[-1]
        assert event.event_type == EventType.EXAMPLE_RUN
        assert event.context['function_id'] == "example 2.4"
        assert event.context['failed'] == []

    def test_every_id_has_a_runner(self, runner):
        """Test that the advertised ids are all runnable."""
        assert set(EXAMPLE_IDS) == set(runner._runners)
