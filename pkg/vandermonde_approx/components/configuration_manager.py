"""
Configuration Manager component for the Vandermonde approximation toolkit.

Manages numerical tolerances, study settings, output formatting and logging.
"""

import json
import logging
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Any, Dict, Optional

import yaml

from ..models import (
    AnalysisConfig,
    AppConfiguration,
    LoggingConfig,
    NumericsConfig,
    OutputConfig,
)
from ..models.configuration import OUTPUT_FORMATS
from ..scalar import Backend
from .logger import get_logger

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")
DEFAULT_PATH = Path("config/default.yaml")
YAML_SUFFIXES = ('.yaml', '.yml')


@dataclass(frozen=True)
class Result:
    """Outcome of a setter: ok, or an error message for the caller to report."""

    success: bool
    message: Optional[str] = None

    def is_ok(self) -> bool:
        return self.success

    def is_err(self) -> bool:
        return not self.success

    def error(self) -> Optional[str]:
        return self.message

    @classmethod
    def ok(cls) -> 'Result':
        return cls(True)

    @classmethod
    def err(cls, message: str) -> 'Result':
        return cls(False, message)


def read_config_file(path: Path) -> Any:
    """Parsed contents of a YAML (.yaml/.yml) or JSON (anything else) file."""
    with open(path) as stream:
        if path.suffix.lower() in YAML_SUFFIXES:
            return yaml.safe_load(stream)
        return json.load(stream)


def write_config_file(path: Path, data: Dict[str, Any]) -> None:
    """
    Writes YAML or JSON by extension.

    PyYAML writes floats with a decimal point (1.0e-07), which is the
    spelling it reads back as a float.
    """
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, 'w') as stream:
        if path.suffix.lower() in YAML_SUFFIXES:
            yaml.safe_dump(data, stream, default_flow_style=False, sort_keys=False)
        else:
            json.dump(data, stream, indent=2)


class ConfigurationManager:
    """
    Manages toolkit configuration.

    Responsibilities:
    - Load defaults from config/default.yaml (YAML or JSON by extension)
    - Validate every section on load
    - Apply single-value changes through setters that return Result
    - Persist settings back to disk
    """

    def __init__(self, storage_path: Optional[Path] = None):
        """
        Args:
            storage_path: Configuration file; config/default.yaml when omitted.
                A missing file leaves the built-in defaults, an invalid one
                is reported as a warning and also leaves the defaults.
        """
        self.logger = logging.getLogger(__name__)
        self.storage_path = Path(storage_path) if storage_path else DEFAULT_PATH
        self._configuration = AppConfiguration()

        if self.storage_path.exists():
            try:
                self.load_configuration()
            except (OSError, ValueError, yaml.YAMLError) as e:
                self.logger.warning(f"Ignoring {self.storage_path}, built-in defaults apply: {e}")

    def get_configuration(self) -> AppConfiguration:
        return self._configuration

    def set_configuration(self, config: AppConfiguration) -> None:
        """
        Replaces the whole configuration after validating it.

        Raises:
            ValueError: If any section is invalid
        """
        self._validate(self._to_dict(config))
        self._configuration = config
        self.logger.info("Toolkit configuration updated")

    def set_probe_count(self, probe_count: int) -> Result:
        if not isinstance(probe_count, int) or isinstance(probe_count, bool) or probe_count < 2:
            return Result.err(f"Invalid probe_count: must be an integer >= 2, got {probe_count}")
        self._configuration.analysis.probe_count = probe_count
        self._record_change('probe_count', {'probe_count': probe_count})
        return Result.ok()

    def set_max_workers(self, max_workers: int) -> Result:
        if not isinstance(max_workers, int) or isinstance(max_workers, bool) or max_workers < 1:
            return Result.err(f"Invalid max_workers: must be an integer >= 1, got {max_workers}")
        self._configuration.analysis.max_workers = max_workers
        self._record_change('max_workers', {'max_workers': max_workers})
        return Result.ok()

    def set_zero_tolerance(self, tolerance: float) -> Result:
        if not isinstance(tolerance, (int, float)) or isinstance(tolerance, bool) or tolerance < 0:
            return Result.err(f"Invalid float_zero_tolerance: must be nonnegative, got {tolerance}")
        self._configuration.numerics.float_zero_tolerance = float(tolerance)
        self._record_change('float_zero_tolerance', {'float_zero_tolerance': float(tolerance)})
        return Result.ok()

    def set_default_backend(self, backend: str) -> Result:
        try:
            parsed = Backend(backend)
        except ValueError:
            return Result.err(f"Invalid default_backend: must be 'exact' or 'float', got {backend}")
        self._configuration.numerics.default_backend = parsed
        self._record_change('default_backend', {'default_backend': parsed.value})
        return Result.ok()

    def set_output_format(self, output_format: str) -> Result:
        if output_format not in OUTPUT_FORMATS:
            return Result.err(
                f"Invalid output format: must be one of {', '.join(OUTPUT_FORMATS)}, got {output_format}"
            )
        self._configuration.output.format = output_format
        self._record_change('output_format', {'format': output_format})
        return Result.ok()

    def persist_configuration(self, path: Optional[Path] = None) -> None:
        """Writes the current configuration to path, storage_path when omitted."""
        target = Path(path) if path is not None else self.storage_path
        write_config_file(target, self._to_dict(self._configuration))
        self.logger.info(f"Configuration persisted to {target}")

    def load_configuration(self) -> None:
        """
        Reads storage_path over the built-in defaults.

        Missing sections and keys keep their defaults; unknown sections are
        skipped with a warning.

        Raises:
            ValueError: If the file is not a mapping or a present value is invalid
        """
        if not self.storage_path.exists():
            self.logger.warning(f"Configuration file not found: {self.storage_path}")
            return

        loaded = read_config_file(self.storage_path)
        if not loaded:
            self.logger.warning(f"{self.storage_path} is empty, using defaults")
            return
        if not isinstance(loaded, dict):
            raise ValueError(f"Configuration root must be a mapping, got {type(loaded).__name__}")

        merged = self._to_dict(AppConfiguration())
        for section, values in loaded.items():
            if section not in merged:
                self.logger.warning(f"Ignoring unknown configuration section '{section}'")
                continue
            if not isinstance(values, dict):
                raise ValueError(f"Section '{section}' must be a mapping")
            merged[section].update(values)

        self._validate(merged)
        self._configuration = self._from_dict(merged)
        self.logger.info(f"Configuration loaded from {self.storage_path}")

    def _record_change(self, change_type: str, values: Dict[str, Any]) -> None:
        self.logger.info(f"Configuration change {change_type}: {values}")
        get_logger().log_configuration_change(change_type, values)

    def _to_dict(self, config: AppConfiguration) -> Dict[str, Dict[str, Any]]:
        data = {
            'numerics': asdict(config.numerics),
            'analysis': asdict(config.analysis),
            'output': asdict(config.output),
            'logging': asdict(config.logging),
        }
        data['numerics']['default_backend'] = config.numerics.default_backend.value
        return data

    def _from_dict(self, data: Dict[str, Dict[str, Any]]) -> AppConfiguration:
        numerics = dict(data['numerics'])
        numerics['default_backend'] = Backend(numerics['default_backend'])
        numerics['float_zero_tolerance'] = float(numerics['float_zero_tolerance'])
        numerics['float_residual_tolerance'] = float(numerics['float_residual_tolerance'])
        analysis = dict(data['analysis'])
        analysis['taylor_degrees'] = list(analysis['taylor_degrees'])
        return AppConfiguration(
            numerics=NumericsConfig(**numerics),
            analysis=AnalysisConfig(**analysis),
            output=OutputConfig(**data['output']),
            logging=LoggingConfig(**data['logging']),
        )

    def _validate(self, data: Dict[str, Dict[str, Any]]) -> None:
        """
        Validates a merged configuration dictionary.

        Raises:
            ValueError: Naming the offending key
        """
        self._check_keys(data)
        self._validate_numerics(data['numerics'])
        self._validate_analysis(data['analysis'])
        self._validate_output(data['output'])
        self._validate_logging(data['logging'])

    def _check_keys(self, data: Dict[str, Dict[str, Any]]) -> None:
        known = self._to_dict(AppConfiguration())
        for section, values in data.items():
            unknown = set(values) - set(known[section])
            if unknown:
                raise ValueError(f"Unknown keys in '{section}': {', '.join(sorted(unknown))}")

    def _validate_numerics(self, config: Dict[str, Any]) -> None:
        if config['default_backend'] not in [backend.value for backend in Backend]:
            raise ValueError(
                f"Invalid numerics.default_backend: must be 'exact' or 'float', got {config['default_backend']}"
            )
        for key in ('float_zero_tolerance', 'float_residual_tolerance'):
            value = config[key]
            if not _is_number(value) or value < 0:
                raise ValueError(f"Invalid numerics.{key}: must be nonnegative, got {value}")
        limit = config['exact_order_limit']
        if not _is_int(limit) or limit < 1:
            raise ValueError(f"Invalid numerics.exact_order_limit: must be an integer >= 1, got {limit}")

    def _validate_analysis(self, config: Dict[str, Any]) -> None:
        probes = config['probe_count']
        if not _is_int(probes) or probes < 2:
            raise ValueError(f"Invalid analysis.probe_count: must be an integer >= 2, got {probes}")
        workers = config['max_workers']
        if not _is_int(workers) or workers < 1:
            raise ValueError(f"Invalid analysis.max_workers: must be an integer >= 1, got {workers}")
        degrees = config['taylor_degrees']
        if not isinstance(degrees, list) or not degrees:
            raise ValueError("Invalid analysis.taylor_degrees: must be a nonempty list")
        for degree in degrees:
            if not _is_int(degree) or degree < 1:
                raise ValueError(f"Invalid analysis.taylor_degrees entry: must be an integer >= 1, got {degree}")

    def _validate_output(self, config: Dict[str, Any]) -> None:
        if config['format'] not in OUTPUT_FORMATS:
            raise ValueError(
                f"Invalid output.format: must be one of {', '.join(OUTPUT_FORMATS)}, got {config['format']}"
            )
        digits = config['csv_float_digits']
        if not _is_int(digits) or not 1 <= digits <= 17:
            raise ValueError(f"Invalid output.csv_float_digits: must be between 1 and 17, got {digits}")

    def _validate_logging(self, config: Dict[str, Any]) -> None:
        level = config['level']
        if not isinstance(level, str) or level.upper() not in LOG_LEVELS:
            raise ValueError(f"Invalid logging.level: must be one of {', '.join(LOG_LEVELS)}, got {level}")
        log_dir = config['event_log_dir']
        if log_dir is not None and not isinstance(log_dir, str):
            raise ValueError(f"Invalid logging.event_log_dir: must be a path or null, got {log_dir}")


def _is_int(value: Any) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


def _is_number(value: Any) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool)
