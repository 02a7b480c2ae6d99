"""
AWMVC Telemetry Module
Wall-clock accounting for the solver's update steps.

Features:
- Cumulative seconds per named step
- Call counts, mean / median / p95 durations per step
- Export as plain dictionaries for JSON reports

Usage:
    timer = StepTimer()
    with timer.step("update_H"):
        ...
    timer.cumulative_seconds()   # {"update_H": 0.0123}
    timer.summary()["update_H"]["median_seconds"]
"""

import statistics
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Dict, Iterator, List


@dataclass
class StepMetrics:
    """Cumulative timing for one named step."""
    name: str
    calls: int = 0
    total_seconds: float = 0.0
    durations: List[float] = field(default_factory=list)

    @property
    def mean_seconds(self) -> float:
        if self.calls == 0:
            return 0.0
        return self.total_seconds / self.calls

    @property
    def median_seconds(self) -> float:
        if not self.durations:
            return 0.0
        return statistics.median(self.durations)

    @property
    def p95_seconds(self) -> float:
        if len(self.durations) < 2:
            return self.mean_seconds
        sorted_times = sorted(self.durations)
        idx = int(len(sorted_times) * 0.95)
        return sorted_times[min(idx, len(sorted_times) - 1)]

    def to_dict(self) -> dict:
        return {
            "calls": self.calls,
            "total_seconds": self.total_seconds,
            "mean_seconds": self.mean_seconds,
            "median_seconds": self.median_seconds,
            "p95_seconds": self.p95_seconds,
        }


class StepTimer:
    """
    Accumulates wall time per step name.

    Step names keep first-seen order so exported dictionaries list the
    solver steps in sweep order.
    """

    def __init__(self):
        self.steps: Dict[str, StepMetrics] = {}

    def record(self, name: str, seconds: float):
        """Record one completed call of ``name`` that took ``seconds``."""
        if name not in self.steps:
            self.steps[name] = StepMetrics(name=name)
        metrics = self.steps[name]
        metrics.calls += 1
        metrics.total_seconds += seconds
        metrics.durations.append(seconds)

    @contextmanager
    def step(self, name: str) -> Iterator[None]:
        start = time.perf_counter()
        try:
            yield
        finally:
            self.record(name, time.perf_counter() - start)

    def cumulative_seconds(self) -> Dict[str, float]:
        return {name: m.total_seconds for name, m in self.steps.items()}

    def summary(self) -> Dict[str, dict]:
        return {name: m.to_dict() for name, m in self.steps.items()}

    def reset(self):
        self.steps.clear()
