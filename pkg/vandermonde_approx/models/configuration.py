"""
Configuration models for the Vandermonde approximation toolkit.
"""

from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional

from ..errors import ConfigurationError
from ..scalar import Backend


@dataclass
class NumericsConfig:
    """Backend choice and tolerances."""

    default_backend: Backend = Backend.EXACT
    float_zero_tolerance: float = 1e-7  # relative to max |coefficient|
    float_residual_tolerance: float = 1e-8
    exact_order_limit: int = 12


@dataclass
class AnalysisConfig:
    """Convergence and Taylor study settings."""

    probe_count: int = 2000
    max_workers: int = 4
    taylor_degrees: List[int] = field(default_factory=lambda: [4, 6, 8, 10])


@dataclass
class OutputConfig:
    """Report formatting."""

    format: str = "json"
    csv_float_digits: int = 17


@dataclass
class LoggingConfig:
    """Log level and the structured event file location."""

    level: str = "INFO"
    event_log_dir: Optional[str] = "logs"


@dataclass
class AppConfiguration:
    """Complete toolkit configuration."""

    numerics: NumericsConfig = field(default_factory=NumericsConfig)
    analysis: AnalysisConfig = field(default_factory=AnalysisConfig)
    output: OutputConfig = field(default_factory=OutputConfig)
    logging: LoggingConfig = field(default_factory=LoggingConfig)


OUTPUT_FORMATS = ("json", "csv", "text")


@dataclass
class RunConfig:
    """
    One CLI invocation after flags and configuration are merged.

    Exactly one input source is set: input_path, fixture_id or inline_nodes
    (analysis commands use function_id instead and leave all three empty).
    """

    subcommand: str
    backend: Backend
    output_format: str = "json"
    input_path: Optional[Path] = None
    fixture_id: Optional[str] = None
    inline_nodes: Optional[str] = None
    function_id: Optional[str] = None
    tolerance: Optional[float] = None
    probe_count: int = 2000
    out_path: Optional[Path] = None
    fixture_irrational: bool = False

    def validate(self) -> None:
        """
        Raises:
            ConfigurationError: On conflicting input sources, an unknown
                output format, a nonpositive probe count or an exact run
                over irrational fixture nodes
        """
        sources = [s for s in (self.input_path, self.fixture_id, self.inline_nodes) if s is not None]
        if len(sources) > 1:
            raise ConfigurationError(
                f"'{self.subcommand}' takes exactly one input source, got {len(sources)}"
            )
        if self.output_format not in OUTPUT_FORMATS:
            raise ConfigurationError(
                f"Unknown output format '{self.output_format}'; use one of {', '.join(OUTPUT_FORMATS)}"
            )
        if self.probe_count < 2:
            raise ConfigurationError(f"Probe count must be >= 2, got {self.probe_count}")
        if self.tolerance is not None and self.tolerance < 0:
            raise ConfigurationError(f"Tolerance must be nonnegative, got {self.tolerance}")
        if self.fixture_irrational and self.backend is Backend.EXACT:
            raise ConfigurationError(
                f"Fixture '{self.fixture_id}' has irrational nodes; use --backend float"
            )
