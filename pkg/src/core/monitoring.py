"""
Monitoring, Logging, and Observability.

This module provides structured logging and Prometheus metrics for the
laboratory. Logs always go to stderr so that command output on stdout stays
byte-identical across runs.
"""

import functools
import logging
import sys
import time
from enum import Enum
from typing import Any, Callable, Dict, Optional, Union

import structlog
from prometheus_client import CollectorRegistry, Counter, Histogram, write_to_textfile

from src.core.config import settings


# Prometheus Metrics
registry = CollectorRegistry()

solver_runs_total = Counter(
    "solver_runs_total",
    "Total number of exact minimum computations",
    ["param", "engine"],
    registry=registry,
)

solver_nodes_explored_total = Counter(
    "solver_nodes_explored_total",
    "Search nodes visited by the exact solver",
    ["param"],
    registry=registry,
)

solver_duration = Histogram(
    "solver_duration_seconds",
    "Exact solver duration in seconds",
    ["param"],
    registry=registry,
)

bound_checks_total = Counter(
    "bound_checks_total",
    "Bound catalogue evaluations",
    ["bound_id", "outcome"],
    registry=registry,
)

hunt_digraphs_checked_total = Counter(
    "hunt_digraphs_checked_total",
    "Digraphs examined by counterexample hunts",
    ["conjecture"],
    registry=registry,
)

cli_commands_total = Counter(
    "cli_commands_total",
    "CLI command invocations",
    ["command", "exit_code"],
    registry=registry,
)

function_duration = Histogram(
    "function_duration_seconds",
    "Duration of monitored functions",
    ["function_name"],
    registry=registry,
)

_COUNTERS = {
    "solver_runs_total": solver_runs_total,
    "solver_nodes_explored_total": solver_nodes_explored_total,
    "bound_checks_total": bound_checks_total,
    "hunt_digraphs_checked_total": hunt_digraphs_checked_total,
    "cli_commands_total": cli_commands_total,
}

_HISTOGRAMS = {
    "solver_duration_seconds": solver_duration,
    "function_duration_seconds": function_duration,
}


class LogLevel(Enum):
    """Log levels for structured logging."""
    DEBUG = "debug"
    INFO = "info"
    WARNING = "warning"
    ERROR = "error"
    CRITICAL = "critical"


_configured = False


def setup_logging(level: Optional[str] = None) -> None:
    """Configure stdlib logging on stderr and structlog on top of it."""
    global _configured

    log_level = (level or settings.LOG_LEVEL).upper()
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(message)s"))

    root = logging.getLogger()
    root.handlers = [handler]
    root.setLevel(getattr(logging, log_level))

    renderer = (
        structlog.processors.JSONRenderer(sort_keys=True)
        if settings.LOG_FORMAT == "json"
        else structlog.dev.ConsoleRenderer(colors=False)
    )

    structlog.configure(
        processors=[
            structlog.stdlib.filter_by_level,
            structlog.stdlib.add_logger_name,
            structlog.stdlib.add_log_level,
            structlog.stdlib.PositionalArgumentsFormatter(),
            structlog.processors.TimeStamper(fmt="iso"),
            structlog.processors.StackInfoRenderer(),
            structlog.processors.format_exc_info,
            structlog.processors.UnicodeDecoder(),
            renderer,
        ],
        context_class=dict,
        logger_factory=structlog.stdlib.LoggerFactory(),
        wrapper_class=structlog.stdlib.BoundLogger,
        cache_logger_on_first_use=False,
    )
    _configured = True


def get_logger(name: str = __name__):
    if not _configured:
        setup_logging()
    return structlog.get_logger(name)


def log_event(event_type: str, data: Dict[str, Any] = None, level: LogLevel = LogLevel.INFO):
    """Log a structured event."""
    try:
        logger = get_logger("secdom")
        event_data = dict(data or {})
        getattr(logger, level.value)(event_type, **event_data)
    except Exception as e:
        # Fallback to basic logging
        print(f"Failed to log event {event_type}: {e}", file=sys.stderr)


def track_metric(name: str, value: Union[int, float] = 1, labels: Dict[str, str] = None):
    """Track a metric."""
    if not settings.METRICS_ENABLED:
        return
    try:
        labels = labels or {}
        if name in _COUNTERS:
            _COUNTERS[name].labels(**labels).inc(value)
        elif name in _HISTOGRAMS:
            _HISTOGRAMS[name].labels(**labels).observe(value)
        else:
            log_event("unknown_metric", {"metric_name": name}, LogLevel.WARNING)
    except Exception as e:
        log_event("metric_tracking_failed", {"metric_name": name, "error": str(e)}, LogLevel.ERROR)


def write_metrics(path: str) -> None:
    """Write the metrics registry in Prometheus textfile format."""
    try:
        write_to_textfile(path, registry)
        log_event("metrics_written", {"path": path})
    except OSError as e:
        log_event("metrics_write_failed", {"path": path, "error": str(e)}, LogLevel.ERROR)
        raise


def monitor_execution_time(func: Callable) -> Callable:
    """Decorator to monitor function execution time."""
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        start_time = time.perf_counter()
        try:
            result = func(*args, **kwargs)
        except Exception as e:
            duration = time.perf_counter() - start_time
            log_event("function_execution_failed", {
                "function_name": func.__name__,
                "duration_seconds": duration,
                "error": str(e),
                "status": "failed",
            }, LogLevel.ERROR)
            raise

        duration = time.perf_counter() - start_time
        track_metric("function_duration_seconds", duration, {"function_name": func.__name__})
        log_event("function_execution_completed", {
            "function_name": func.__name__,
            "duration_seconds": duration,
            "status": "success",
        }, LogLevel.DEBUG)
        return result

    return wrapper
