"""
Run metrics for the formatter pipeline.

Counters track record outcomes (kept, rejected, quarantined, unparsed spans)
and timers track stage durations. The CLI logs a snapshot when a command ends.
"""

import threading
import time
from dataclasses import dataclass, field
from functools import wraps
from typing import Any, Callable, Dict, Optional


class MetricType:
    COUNTER = "counter"
    TIMER = "timer"


@dataclass
class Counter:
    """Counter metric that only increases."""

    name: str
    description: str = ""
    value: float = 0.0
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    def inc(self, amount: float = 1.0) -> None:
        if amount < 0:
            raise ValueError("Counter can only increase")
        with self._lock:
            self.value += amount


@dataclass
class Timer:
    """Accumulates durations in seconds."""

    name: str
    description: str = ""
    count: int = 0
    total: float = 0.0
    maximum: float = 0.0
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    def observe(self, seconds: float) -> None:
        with self._lock:
            self.count += 1
            self.total += seconds
            self.maximum = max(self.maximum, seconds)

    @property
    def mean(self) -> float:
        return self.total / self.count if self.count else 0.0


class MetricsCollector:
    """Registry of named counters and timers."""

    def __init__(self):
        self._metrics: Dict[str, Any] = {}
        self._lock = threading.Lock()

    def counter(self, name: str, description: str = "") -> Counter:
        return self._get_or_create(name, Counter, description)

    def timer(self, name: str, description: str = "") -> Timer:
        return self._get_or_create(name, Timer, description)

    def _get_or_create(self, name: str, metric_class: type, description: str):
        with self._lock:
            metric = self._metrics.get(name)
            if metric is None:
                metric = metric_class(name, description)
                self._metrics[name] = metric
            elif not isinstance(metric, metric_class):
                raise ValueError(f"Metric {name} already exists with different type")
            return metric

    def get_metric(self, name: str) -> Optional[Any]:
        with self._lock:
            return self._metrics.get(name)

    def snapshot(self) -> Dict[str, Any]:
        """Plain-dict view of every metric, suitable for a log event."""
        with self._lock:
            metrics = dict(self._metrics)
        out: Dict[str, Any] = {}
        for name, metric in sorted(metrics.items()):
            if isinstance(metric, Counter):
                out[name] = metric.value
            else:
                out[name] = {
                    "count": metric.count,
                    "total_s": round(metric.total, 6),
                    "max_s": round(metric.maximum, 6),
                }
        return out

    def reset(self) -> None:
        with self._lock:
            self._metrics.clear()


_metrics_collector = MetricsCollector()


def get_metrics_collector() -> MetricsCollector:
    """Get the global metrics collector instance."""
    return _metrics_collector


def track_execution_time(metric_name: str) -> Callable:
    """Decorator to record function execution time under ``metric_name``."""

    def decorator(func: Callable) -> Callable:
        @wraps(func)
        def wrapper(*args, **kwargs):
            timer = get_metrics_collector().timer(
                metric_name, f"Execution time for {func.__name__} in seconds"
            )
            start = time.perf_counter()
            try:
                return func(*args, **kwargs)
            finally:
                timer.observe(time.perf_counter() - start)

        return wrapper

    return decorator
