"""
Core components for the Vandermonde approximation toolkit.
"""

from .configuration_manager import ConfigurationManager, Result
from .analysis_engine import AnalysisEngine
from .example_runner import EXAMPLE_IDS, ExampleRunner
from .report_generator import ReportGenerator
from .logger import (
    SystemLogger,
    EventType,
    EventStatus,
    LogEvent,
    get_logger,
    initialize_logger
)

__all__ = [
    "ConfigurationManager",
    "Result",
    "AnalysisEngine",
    "ExampleRunner",
    "EXAMPLE_IDS",
    "ReportGenerator",
    "SystemLogger",
    "EventType",
    "EventStatus",
    "LogEvent",
    "get_logger",
    "initialize_logger"
]
