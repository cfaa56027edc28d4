"""
End-to-end reproduction of the printed Taylor tables through the CLI.
"""

import json

import pytest

from vandermonde_approx.cli import EXIT_OK, main


def taylor_json(capsys, function_id):
    assert main(["taylor", function_id]) == EXIT_OK
    return json.loads(capsys.readouterr().out)


@pytest.mark.integration
class TestSineTable:
    """The sin(x) table on uniform partitions of [-pi, pi]."""

    def test_only_the_swapped_digits_are_flagged(self, cli_workspace, capsys):
        data = taylor_json(capsys, "sine")
        assert [(flag['row'], flag['power']) for flag in data['flags']] == [("P4", "3")]
        flag = data['flags'][0]
        assert flag['printed'] == "0.086040"
        assert abs(float(flag['computed'])) == pytest.approx(0.086004092, rel=1e-8)

    def test_reported_powers_are_odd(self, cli_workspace, capsys):
        data = taylor_json(capsys, "sine")
        assert [row['power'] for row in data['rows']] == ["1", "3", "5", "7", "9"]

    def test_estimates_approach_the_series(self, cli_workspace, capsys):
        """The power-1 magnitude moves toward 1 as the degree grows."""
        data = taylor_json(capsys, "sine")
        first = [abs(float(value)) for value in data['rows'][0]['estimates']]
        assert first == sorted(first)
        assert first[-1] == pytest.approx(1.0, abs=1e-5)

    def test_event_log_records_the_cross_check(self, cli_workspace, capsys):
        taylor_json(capsys, "sine")
        lines = (cli_workspace / "logs" / "events.jsonl").read_text().splitlines()
        checks = [json.loads(line) for line in lines if json.loads(line)['event_type'] == "cross_check"]
        assert checks[-1]['status'] == "success"


@pytest.mark.integration
class TestLog1pTable:
    """The ln(1+x) table on uniform partitions of [-3/4, 3/4]."""

    def test_known_flags(self, cli_workspace, capsys):
        data = taylor_json(capsys, "log1p")
        flags = {(flag['row'], flag['power']): flag for flag in data['flags']}
        assert set(flags) == {("P4", "2"), ("reference", "5")}
        assert float(flags[("P4", "2")]['computed']) == pytest.approx(-0.473516977, abs=1e-8)
        assert float(flags[("reference", "5")]['computed']) == pytest.approx(0.2)

    def test_p4_has_no_fifth_power(self, cli_workspace, capsys):
        data = taylor_json(capsys, "log1p")
        assert data['rows'][-1]['power'] == "5"
        assert data['rows'][-1]['estimates'][0] is None


@pytest.mark.integration
class TestWorkedTableExamples:
    """Worked examples that embed the printed tables."""

    @pytest.mark.parametrize("example_id, flag_line", [
        ("2.7", "flag P4 k=3: printed 0.086040"),
        ("2.8", "flag P4 k=2: printed -0.453517"),
    ])
    def test_transcript_shows_flags(self, cli_workspace, capsys, example_id, flag_line):
        assert main(["--format", "text", "example", example_id]) == EXIT_OK
        assert flag_line in capsys.readouterr().out
