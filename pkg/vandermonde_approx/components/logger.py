"""
Structured event log for the Vandermonde approximation toolkit.

Fits, determinant checks, studies, example runs, cross-checks and
configuration changes are recorded as LogEvents. Each event is kept in
memory, appended to <log_dir>/events.jsonl when a directory is configured,
and mirrored to the "vandermonde_approx" standard logger. Errors and failed
cross-checks are also handed to the registered notifiers.
"""

import json
import logging
import traceback
from dataclasses import dataclass, field
from datetime import datetime
from enum import Enum
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional

Notifier = Callable[[str], None]

EVENT_FILE = "events.jsonl"


class EventType(Enum):
    """What an event records."""
    ERROR = "error"
    FIT = "fit"
    DETERMINANT = "determinant"
    CONVERGENCE_STUDY = "convergence_study"
    TAYLOR_STUDY = "taylor_study"
    EXAMPLE_RUN = "example_run"
    CROSS_CHECK = "cross_check"
    CONFIGURATION_CHANGE = "configuration_change"


class EventStatus(Enum):
    SUCCESS = "success"
    FAILURE = "failure"

    @classmethod
    def of(cls, passed: bool) -> 'EventStatus':
        return cls.SUCCESS if passed else cls.FAILURE


NOTIFYING = frozenset({EventType.ERROR, EventType.CROSS_CHECK})


@dataclass(frozen=True)
class LogEvent:
    """One structured event; context values are serialized with str() when JSON cannot."""
    timestamp: datetime
    event_type: EventType
    status: EventStatus
    component: str
    message: str
    context: Dict[str, Any] = field(default_factory=dict)
    error_details: Optional[str] = None

    @property
    def failed(self) -> bool:
        return self.status is EventStatus.FAILURE

    def to_dict(self) -> Dict[str, Any]:
        return {
            'timestamp': self.timestamp.isoformat(),
            'event_type': self.event_type.value,
            'status': self.status.value,
            'component': self.component,
            'message': self.message,
            'context': self.context,
            'error_details': self.error_details,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), default=str)

    def summary(self) -> str:
        """Single line for the standard logger."""
        line = f"[{self.event_type.value}] {self.component}: {self.message}"
        if self.context:
            line += " (" + ", ".join(f"{key}={value}" for key, value in self.context.items()) + ")"
        return line

    def digest(self) -> str:
        """Multi-line text handed to notifiers."""
        lines = [
            f"{self.component} reported a failure at {self.timestamp.isoformat(timespec='seconds')}",
            self.message,
        ]
        lines += [f"  {key}: {value}" for key, value in self.context.items()]
        if self.error_details:
            lines += ["", self.error_details.rstrip()]
        return "\n".join(lines) + "\n"


def shorten_paths(values: Dict[str, Any]) -> Dict[str, Any]:
    """Path objects, and strings under *_dir or *_path keys, keep only their final component."""
    shortened: Dict[str, Any] = {}
    for key, value in values.items():
        if isinstance(value, dict):
            value = shorten_paths(value)
        elif isinstance(value, Path) or (isinstance(value, str) and key.endswith(('_dir', '_path'))):
            value = Path(value).name
        shortened[key] = value
    return shortened


def _present(**values: Any) -> Dict[str, Any]:
    return {key: value for key, value in values.items() if value is not None}


class SystemLogger:
    """
    Event sink for one run of the toolkit.

    Attributes:
        log_dir: Directory holding events.jsonl, or None to keep events in memory only
        event_log_path: The JSON-lines file, or None
        events: Every event logged through this instance, oldest first
    """

    def __init__(self, log_dir: Optional[Path] = None, admin_notifiers: Optional[List[Notifier]] = None):
        self.log_dir = Path(log_dir).absolute() if log_dir is not None else None
        self.event_log_path: Optional[Path] = None
        if self.log_dir is not None:
            self.log_dir.mkdir(parents=True, exist_ok=True)
            self.event_log_path = self.log_dir / EVENT_FILE
        self.admin_notifiers: List[Notifier] = list(admin_notifiers or [])
        self.logger = logging.getLogger("vandermonde_approx")
        self.events: List[LogEvent] = []

    def log_event(
        self,
        event_type: EventType,
        status: EventStatus,
        component: str,
        message: str,
        context: Optional[Dict[str, Any]] = None,
        error_details: Optional[str] = None,
    ) -> LogEvent:
        event = LogEvent(datetime.now(), event_type, status, component, message, dict(context or {}), error_details)
        self.events.append(event)
        if self.event_log_path is not None:
            try:
                with open(self.event_log_path, 'a') as stream:
                    stream.write(event.to_json() + "\n")
            except OSError as e:
                self.logger.warning(f"Could not append to {self.event_log_path}: {e}")
        self.logger.log(logging.ERROR if event.failed else logging.INFO, event.summary())
        if event.failed and event.event_type in NOTIFYING:
            self._notify(event)
        return event

    def events_of(self, event_type: EventType) -> List[LogEvent]:
        return [event for event in self.events if event.event_type is event_type]

    def log_error(
        self,
        component: str,
        message: str,
        error: Optional[BaseException] = None,
        context: Optional[Dict[str, Any]] = None,
    ) -> LogEvent:
        """Records a failure; an exception contributes its formatted traceback."""
        details = None
        if error is not None:
            details = "".join(traceback.format_exception(type(error), error, error.__traceback__))
        return self.log_event(EventType.ERROR, EventStatus.FAILURE, component, message, context, details)

    def log_fit(
        self,
        status: EventStatus,
        backend: str,
        order: int,
        effective_degree: Optional[int] = None,
        residual_norm: Optional[float] = None,
        error_details: Optional[str] = None,
    ) -> None:
        self.log_event(
            EventType.FIT,
            status,
            "Interpolation",
            f"order-{order} {backend} fit",
            _present(backend=backend, order=order, effective_degree=effective_degree, residual_norm=residual_norm),
            error_details,
        )

    def log_determinant(self, order: int, orientation: str, agree: bool) -> None:
        verdict = "agree" if agree else "disagree"
        self.log_event(
            EventType.DETERMINANT,
            EventStatus.of(agree),
            "Vandermonde",
            f"order-{order} {orientation} determinant formulas {verdict}",
            {'order': order, 'orientation': orientation, 'agree': agree},
        )

    def log_study(
        self,
        event_type: EventType,
        status: EventStatus,
        function_id: str,
        context: Optional[Dict[str, Any]] = None,
        error_details: Optional[str] = None,
    ) -> None:
        """A convergence study, Taylor study or example run, keyed by function or example id."""
        self.log_event(
            event_type,
            status,
            "AnalysisEngine",
            f"{event_type.value.replace('_', ' ')} of {function_id}",
            {'function_id': function_id, **(context or {})},
            error_details,
        )

    def log_cross_check(self, check: str, passed: bool, expected: Any = None, actual: Any = None) -> None:
        self.log_event(
            EventType.CROSS_CHECK,
            EventStatus.of(passed),
            "CrossCheck",
            f"{check}: {'passed' if passed else 'failed'}",
            _present(check=check, passed=passed, expected=expected, actual=actual),
        )

    def log_configuration_change(
        self,
        change_type: str,
        changed_values: Dict[str, Any],
        component: str = "ConfigurationManager",
    ) -> None:
        self.log_event(
            EventType.CONFIGURATION_CHANGE,
            EventStatus.SUCCESS,
            component,
            f"set {change_type}",
            {'change_type': change_type, 'changed_values': shorten_paths(changed_values)},
        )

    def add_admin_notifier(self, notifier: Notifier) -> None:
        self.admin_notifiers.append(notifier)

    def _notify(self, event: LogEvent) -> None:
        digest = event.digest()
        for notifier in self.admin_notifiers:
            try:
                notifier(digest)
            except Exception as e:
                self.logger.error(f"Notifier {notifier!r} failed: {e}")


_global_logger: Optional[SystemLogger] = None


def get_logger() -> SystemLogger:
    """The process-wide logger; memory-only until initialize_logger is called."""
    global _global_logger
    if _global_logger is None:
        _global_logger = SystemLogger()
    return _global_logger


def initialize_logger(log_dir: Optional[Path] = None, admin_notifiers: Optional[List[Notifier]] = None) -> SystemLogger:
    """Replaces the process-wide logger, e.g. once the configured event directory is known."""
    global _global_logger
    _global_logger = SystemLogger(log_dir, admin_notifiers)
    return _global_logger
