"""
Multi-restart k-means with k-means++ seeding, used to turn the consensus
matrix M into hard cluster assignments.

Points are columns (dim x n), matching M's k x n layout.
"""
from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np
from pydantic import BaseModel, Field
from scipy.spatial.distance import cdist
from sklearn.cluster import kmeans_plusplus

from ..config.settings import settings
from ..errors import ConfigError, NumericalError

logger = logging.getLogger(__name__)


class KMeansConfig(BaseModel):
    k: int = Field(..., ge=1, description="Number of clusters.")
    restarts: int = Field(50, ge=1, description="Independent k-means++ restarts; the lowest SSE wins.")
    max_lloyd_iters: int = Field(100, ge=1, description="Lloyd iteration cap per restart.")
    seed: int = Field(0, ge=0, description="Master seed; restart r uses SeedSequence(seed).spawn(restarts)[r].")


@dataclass
class Assignment:
    labels: np.ndarray
    sse: float
    restarts_run: int
    centroids: np.ndarray
    restart_sse: List[float] = field(default_factory=list)
    restart_labels: List[np.ndarray] = field(default_factory=list)
    lloyd_sse_trace: List[float] = field(default_factory=list)
    best_restart: int = 0

    def to_dict(self) -> dict:
        return {
            "sse": self.sse,
            "restarts_run": self.restarts_run,
            "best_restart": self.best_restart,
            "lloyd_iterations": len(self.lloyd_sse_trace),
        }


@dataclass
class _RestartResult:
    labels: np.ndarray
    centroids: np.ndarray
    sse: float
    trace: List[float]


def _centroids(X: np.ndarray, labels: np.ndarray, k: int) -> np.ndarray:
    counts = np.bincount(labels, minlength=k).astype(np.float64)
    sums = np.zeros((k, X.shape[1]))
    np.add.at(sums, labels, X)
    return sums / counts[:, None]


def _sse(X: np.ndarray, centroids: np.ndarray, labels: np.ndarray) -> float:
    diff = X - centroids[labels]
    return float(np.vdot(diff, diff))


def _repair_empty(labels: np.ndarray, d2: np.ndarray, k: int) -> np.ndarray:
    """Give every empty cluster the point farthest from its current centroid."""
    counts = np.bincount(labels, minlength=k)
    if np.all(counts > 0):
        return labels
    labels = labels.copy()
    own = d2[np.arange(labels.size), labels].copy()
    for j in np.flatnonzero(counts == 0):
        donors = counts[labels] > 1
        candidates = np.where(donors, own, -np.inf)
        idx = int(np.argmax(candidates))
        counts[labels[idx]] -= 1
        labels[idx] = j
        counts[j] += 1
        own[idx] = 0.0
    return labels


def _lloyd(X: np.ndarray, init: np.ndarray, max_iters: int) -> _RestartResult:
    k = init.shape[0]
    centroids = init.astype(np.float64, copy=True)
    labels: Optional[np.ndarray] = None
    trace: List[float] = []
    for _ in range(max_iters):
        d2 = cdist(X, centroids, metric="sqeuclidean")
        # argmin returns the first minimum: lowest cluster index wins ties
        new_labels = _repair_empty(np.argmin(d2, axis=1), d2, k)
        if labels is not None and np.array_equal(new_labels, labels):
            break
        labels = new_labels
        centroids = _centroids(X, labels, k)
        trace.append(_sse(X, centroids, labels))
    return _RestartResult(labels=labels, centroids=centroids, sse=_sse(X, centroids, labels), trace=trace)


def kmeans(
    points: np.ndarray,
    cfg: KMeansConfig,
    init: Optional[np.ndarray] = None,
    threads: Optional[int] = None,
) -> Assignment:
    """
    Cluster the columns of ``points`` (dim x n).

    Runs ``cfg.restarts`` k-means++-seeded Lloyd optimizations and keeps
    the one with minimal SSE (ties go to the lowest restart index). With
    ``init`` (dim x k) every restart starts from those centroids instead.
    Restart r always uses the same sub-seed, so threaded and sequential
    runs select the same winner.
    """
    points = np.asarray(points, dtype=np.float64)
    if points.ndim != 2:
        raise ValueError(f"points must be a 2-D dim x n matrix, got shape {points.shape}")
    if not np.all(np.isfinite(points)):
        raise NumericalError("k-means input contains non-finite entries")
    n = points.shape[1]
    if n < cfg.k:
        raise ConfigError(f"cannot form k={cfg.k} clusters from n={n} points")

    X = np.ascontiguousarray(points.T)
    if init is not None:
        init = np.asarray(init, dtype=np.float64)
        if init.shape != (points.shape[0], cfg.k):
            raise ValueError(f"init must have shape {(points.shape[0], cfg.k)}, got {init.shape}")
        init = init.T

    seeds = np.random.SeedSequence(cfg.seed).spawn(cfg.restarts)

    def run(r: int) -> _RestartResult:
        if init is not None:
            start = init
        else:
            sub_seed = int(seeds[r].generate_state(1)[0])
            start, _ = kmeans_plusplus(X, n_clusters=cfg.k, random_state=sub_seed)
        return _lloyd(X, start, cfg.max_lloyd_iters)

    workers = threads if threads is not None else settings.THREADS
    if workers > 1 and cfg.restarts > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            results = list(executor.map(run, range(cfg.restarts)))
    else:
        results = [run(r) for r in range(cfg.restarts)]

    restart_sse = [res.sse for res in results]
    best = int(np.argmin(restart_sse))
    winner = results[best]
    logger.debug(f"[KMeans] restart SSEs: {np.round(restart_sse, 6).tolist()}")
    logger.info(f"[KMeans] best restart {best} of {cfg.restarts}, sse={winner.sse:.6g}")

    return Assignment(
        labels=winner.labels.astype(np.int64),
        sse=winner.sse,
        restarts_run=cfg.restarts,
        centroids=winner.centroids.T.copy(),
        restart_sse=restart_sse,
        restart_labels=[res.labels.astype(np.int64) for res in results],
        lloyd_sse_trace=list(winner.trace),
        best_restart=best,
    )
