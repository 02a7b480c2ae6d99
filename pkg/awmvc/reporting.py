"""
Run reports (JSON) and per-iteration trace files (CSV).

Every wall-clock number in a report sits under the single ``timings``
key; two runs with the same inputs and seed produce identical reports
once that key is dropped.
"""
from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Union

import numpy as np

from . import __version__
from .errors import DatasetIOError
from .metrics import as_percentages

REPORT_SCHEMA = 1
TIMING_KEY = "timings"


@dataclass
class RunReport:
    config: Dict[str, Any]
    dataset: Dict[str, Any]
    fit: Dict[str, Any]
    kmeans: Dict[str, Any]
    seed: int
    metrics: Optional[Dict[str, float]] = None
    restart_metrics: Optional[Dict[str, Dict[str, float]]] = None
    metric_variants: Dict[str, str] = field(default_factory=dict)
    timings: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "schema": REPORT_SCHEMA,
            "tool_version": __version__,
            "seed": self.seed,
            "config": self.config,
            "dataset": self.dataset,
            "fit": self.fit,
            "kmeans": self.kmeans,
            "metric_variants": self.metric_variants,
        }
        if self.metrics is not None:
            data["metrics"] = self.metrics
            data["metrics_percent"] = as_percentages(self.metrics)
        if self.restart_metrics is not None:
            data["restart_metrics"] = self.restart_metrics
        data[TIMING_KEY] = self.timings
        return data


def without_timings(report: Dict[str, Any]) -> Dict[str, Any]:
    return {key: value for key, value in report.items() if key != TIMING_KEY}


def summarize_restarts(per_restart: Sequence[Dict[str, float]]) -> Dict[str, Dict[str, float]]:
    """Mean and population std of every metric across k-means restarts."""
    names = list(per_restart[0].keys()) if per_restart else []
    out = {}
    for name in names:
        values = np.asarray([scores[name] for scores in per_restart], dtype=np.float64)
        out[name] = {"mean": float(values.mean()), "std": float(values.std())}
    return out


def dumps(report: Dict[str, Any]) -> str:
    return json.dumps(report, indent=2)


def write_json(path: Union[str, Path], payload: Dict[str, Any]) -> None:
    try:
        with open(path, "w", encoding="utf-8") as f:
            f.write(dumps(payload))
            f.write("\n")
    except OSError as e:
        raise DatasetIOError(f"cannot write report to {path}: {e}") from e


def trace_header(m: int) -> List[str]:
    return (
        ["iter", "objective"]
        + [f"alpha_{p + 1}" for p in range(m)]
        + [f"beta_{p + 1}" for p in range(m)]
        + ["acc_of_M"]
    )


def write_trace_csv(
    path: Union[str, Path],
    objective_trace: Sequence[float],
    alpha_history: Sequence[Sequence[float]],
    beta_history: Sequence[Sequence[float]],
    acc_of_m: Optional[Sequence[Optional[float]]] = None,
) -> None:
    """One row per solver iteration; ``acc_of_M`` is blank unless evolution tracking ran."""
    m = len(alpha_history[0]) if alpha_history else 0
    try:
        with open(path, "w", encoding="utf-8", newline="") as f:
            writer = csv.writer(f)
            writer.writerow(trace_header(m))
            for i, obj in enumerate(objective_trace):
                acc_value = acc_of_m[i] if acc_of_m is not None and i < len(acc_of_m) else None
                writer.writerow(
                    [i + 1, repr(float(obj))]
                    + [repr(float(a)) for a in alpha_history[i]]
                    + [repr(float(b)) for b in beta_history[i]]
                    + ["" if acc_value is None else repr(float(acc_value))]
                )
    except OSError as e:
        raise DatasetIOError(f"cannot write trace to {path}: {e}") from e
