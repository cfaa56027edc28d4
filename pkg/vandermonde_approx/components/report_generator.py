"""
Report Generator component for the Vandermonde approximation toolkit.

Renders reports as JSON, CSV or aligned text, and exports plot data.
"""

import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import pandas as pd

from ..models import (
    ConvergenceReport,
    DegreeProbeResult,
    DeterminantReport,
    ExampleRun,
    FitReport,
    OutputConfig,
    TaylorComparison,
)
from ..models.configuration import OUTPUT_FORMATS
from .analysis_engine import plot_data
from .grid import FunctionHandle

Renderable = Union[ConvergenceReport, TaylorComparison, DeterminantReport, FitReport, ExampleRun, DegreeProbeResult]


def dump_json(data: Dict[str, Any]) -> str:
    """Serializes a string-valued report dictionary; re-dumping the parsed text is byte-identical."""
    return json.dumps(data, indent=2)


def convergence_frame(report: ConvergenceReport) -> pd.DataFrame:
    return pd.DataFrame(
        [
            {
                'level': record.level,
                'node_count': record.node_count,
                'formal_degree': record.formal_degree,
                'effective_degree': record.effective_degree,
                'sup_error': record.sup_error,
                'worst_probe': record.worst_probe,
                'residual_norm': record.residual_norm,
                'backend': record.backend,
                'node_exact': record.node_exact,
            }
            for record in report.records
        ],
        columns=[
            'level', 'node_count', 'formal_degree', 'effective_degree',
            'sup_error', 'worst_probe', 'residual_norm', 'backend', 'node_exact',
        ],
    )


def taylor_frame(comparison: TaylorComparison) -> pd.DataFrame:
    """
    One row per power: the reference coefficient, then an estimate and an
    absolute-error column per degree. Missing estimates are NaN.
    """
    rows = []
    for row in comparison.rows:
        entry: Dict[str, Any] = {'power': row.power, 'reference': row.true_coefficient}
        for degree, estimate, error in zip(comparison.degrees, row.estimates, row.errors):
            entry[f'P{degree}'] = estimate
            entry[f'error_P{degree}'] = error
        rows.append(entry)
    columns = ['power', 'reference']
    for degree in comparison.degrees:
        columns += [f'P{degree}', f'error_P{degree}']
    return pd.DataFrame(rows, columns=columns).astype({'power': int})


def fit_frame(report: FitReport) -> pd.DataFrame:
    polynomial = report.polynomial
    return pd.DataFrame(
        {
            'power': list(range(polynomial.declared_degree, -1, -1)),
            'coefficient': polynomial.to_list(),
        }
    )


def determinant_frame(report: DeterminantReport) -> pd.DataFrame:
    data = report.to_dict()
    data['agree'] = 'true' if report.agree else 'false'
    keys = ['orientation', 'order', 'product', 'elimination', 'inductive', 'sign', 'agree']
    return pd.DataFrame({'quantity': keys, 'value': [data[key] for key in keys]})


def checks_frame(run: ExampleRun) -> pd.DataFrame:
    return pd.DataFrame(
        [check.to_dict() for check in run.checks],
        columns=['name', 'passed', 'expected', 'actual'],
    )


def probe_frame(result: DegreeProbeResult) -> pd.DataFrame:
    return pd.DataFrame(
        {
            'node_set': list(range(1, len(result.node_sets) + 1)),
            'nodes': [" ".join(nodes.to_list()) for nodes in result.node_sets],
            'coefficients': [" ".join(polynomial.to_list()) for polynomial in result.polynomials],
        }
    )


def format_taylor_table(comparison: TaylorComparison, digits: int = 9) -> List[str]:
    """Aligned text table of a comparison, for transcripts."""
    text = taylor_frame(comparison).to_string(
        index=False, na_rep="-", float_format=lambda value: f"{value:.{digits}f}"
    )
    return text.splitlines()


class ReportGenerator:
    """
    Renders analysis results.

    Responsibilities:
    - Serialize reports to JSON with every number as a string
    - Tabulate reports as CSV or aligned text through pandas
    - Export (x, error) plot data per convergence level
    """

    def __init__(self, output: Optional[OutputConfig] = None):
        """
        Initialize the Report Generator.

        Args:
            output: Default format and CSV float precision
        """
        self.logger = logging.getLogger(__name__)
        self.output = output or OutputConfig()

    def _frame(self, report: Renderable) -> pd.DataFrame:
        if isinstance(report, ConvergenceReport):
            return convergence_frame(report)
        if isinstance(report, TaylorComparison):
            return taylor_frame(report)
        if isinstance(report, DeterminantReport):
            return determinant_frame(report)
        if isinstance(report, FitReport):
            return fit_frame(report)
        if isinstance(report, ExampleRun):
            return checks_frame(report)
        if isinstance(report, DegreeProbeResult):
            return probe_frame(report)
        raise TypeError(f"Cannot render {type(report).__name__}")

    def render(self, report: Renderable, output_format: Optional[str] = None) -> str:
        """
        Renders a report in json, csv or text.

        Example runs render as their transcript in text format.

        Raises:
            ValueError: For an unknown format
        """
        output_format = output_format or self.output.format
        if output_format not in OUTPUT_FORMATS:
            raise ValueError(f"Unknown output format '{output_format}'")
        self.logger.debug(f"Rendering {type(report).__name__} as {output_format}")

        if output_format == 'json':
            return dump_json(report.to_dict())
        if output_format == 'text' and isinstance(report, ExampleRun):
            return "\n".join(report.transcript) + "\n"

        frame = self._frame(report)
        float_format = f"%.{self.output.csv_float_digits}g"
        if output_format == 'csv':
            return frame.to_csv(index=False, float_format=float_format, lineterminator='\n')
        return frame.to_string(index=False, na_rep="-", float_format=lambda value: float_format % value) + "\n"

    def write_plot_data(
        self,
        directory: Path,
        f: FunctionHandle,
        report: ConvergenceReport,
    ) -> List[Path]:
        """
        Writes level_<k>.csv with columns x,error for every level of a study on [0, 1].

        Returns:
            Paths of the written files, in level order
        """
        directory = Path(directory)
        directory.mkdir(parents=True, exist_ok=True)
        float_format = f"%.{self.output.csv_float_digits}g"
        paths = []
        for record in report.records:
            rows = plot_data(f, report, record.level)
            path = directory / f"level_{record.level}.csv"
            pd.DataFrame(rows, columns=['x', 'error']).to_csv(
                path, index=False, float_format=float_format, lineterminator='\n'
            )
            paths.append(path)
        self.logger.info(f"Plot data for {len(paths)} levels written to {directory}")
        return paths
