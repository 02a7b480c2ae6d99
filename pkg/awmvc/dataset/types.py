from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, Field, model_validator

from ..errors import DatasetValidationError


def remap_labels(raw: Sequence[Any]) -> np.ndarray:
    """
    Map an arbitrary label alphabet onto 0..k-1 in first-occurrence order.

    Labels that already form exactly {0, ..., k-1} are returned unchanged
    (as int64) so saved datasets reload bit-exactly.
    """
    values = np.asarray(raw)
    if values.ndim != 1:
        raise DatasetValidationError(f"labels must be a 1-D vector, got shape {values.shape}")
    if values.size == 0:
        return np.zeros(0, dtype=np.int64)

    if np.issubdtype(values.dtype, np.integer):
        uniques = np.unique(values)
        if uniques[0] == 0 and uniques[-1] == uniques.size - 1:
            return values.astype(np.int64)

    uniques, first_index, inverse = np.unique(values, return_index=True, return_inverse=True)
    order = np.argsort(first_index, kind="stable")
    rank = np.empty_like(order)
    rank[order] = np.arange(order.size)
    return rank[inverse.reshape(-1)].astype(np.int64)


@dataclass(frozen=True, eq=False)
class ViewMatrix:
    """One feature view, stored features x samples (d_v x n)."""
    name: str
    data: np.ndarray

    def __post_init__(self):
        data = np.array(self.data, dtype=np.float64, copy=True)
        if data.ndim != 2:
            raise DatasetValidationError(f"view {self.name!r} must be 2-D, got shape {data.shape}")
        if data.shape[0] < 1:
            raise DatasetValidationError(f"view {self.name!r} has no features")
        if not np.all(np.isfinite(data)):
            raise DatasetValidationError(f"view {self.name!r} contains non-finite entries")
        data.setflags(write=False)
        object.__setattr__(self, "data", data)

    @property
    def d(self) -> int:
        return int(self.data.shape[0])

    @property
    def n(self) -> int:
        return int(self.data.shape[1])


@dataclass(frozen=True, eq=False)
class MultiViewDataset:
    """
    V views over the same n samples, plus optional 0-based labels.

    Immutable after construction: view payloads and labels are read-only
    arrays, so a dataset can be shared across threads.
    """
    views: Tuple[ViewMatrix, ...]
    labels: Optional[np.ndarray] = None
    name: str = "dataset"

    def __post_init__(self):
        views = tuple(self.views)
        if len(views) < 1:
            raise DatasetValidationError("a dataset needs at least one view")
        n = views[0].n
        for view in views[1:]:
            if view.n != n:
                raise DatasetValidationError(
                    f"view {view.name!r} has {view.n} columns, expected {n} (from view {views[0].name!r})"
                )
        object.__setattr__(self, "views", views)

        if self.labels is not None:
            labels = np.array(self.labels, copy=True)
            if labels.ndim != 1 or labels.shape[0] != n:
                raise DatasetValidationError(f"labels length {labels.size} does not match n={n}")
            if not np.issubdtype(labels.dtype, np.integer):
                raise DatasetValidationError("labels must be integers")
            labels = labels.astype(np.int64)
            if labels.size and labels.min() < 0:
                raise DatasetValidationError("labels must be non-negative")
            k_true = int(labels.max()) + 1 if labels.size else 0
            present = np.bincount(labels, minlength=k_true)
            if np.any(present == 0):
                missing = np.flatnonzero(present == 0).tolist()
                raise DatasetValidationError(f"label classes {missing} never occur; labels must be contiguous")
            labels.setflags(write=False)
            object.__setattr__(self, "labels", labels)

    @property
    def n(self) -> int:
        return self.views[0].n

    @property
    def n_views(self) -> int:
        return len(self.views)

    @property
    def dims(self) -> List[int]:
        return [view.d for view in self.views]

    @property
    def k_true(self) -> Optional[int]:
        if self.labels is None:
            return None
        return int(self.labels.max()) + 1

    def matrices(self) -> List[np.ndarray]:
        return [view.data for view in self.views]

    def summary(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "n": self.n,
            "V": self.n_views,
            "dims": self.dims,
            "k_true": self.k_true,
        }


class SyntheticSpec(BaseModel):
    """Parameters of the seeded multi-view Gaussian-cluster generator."""
    n: int = Field(..., ge=1, description="Number of samples.")
    V: int = Field(3, ge=1, description="Number of views.")
    k_true: int = Field(..., ge=1, description="Number of clusters.")
    latent_dim: int = Field(10, ge=1, description="Dimension of the shared latent space.")
    view_dims: Optional[List[int]] = Field(None, description="Feature count per view; defaults to 2*latent_dim each.")
    noise_sigma: float = Field(0.1, ge=0.0, description="Std-dev of latent and observation noise.")
    center_spread: float = Field(5.0, gt=0.0, description="Scale of the cluster centers.")
    seed: int = Field(0, ge=0, description="Generator seed.")

    @model_validator(mode="after")
    def _check_shapes(self) -> "SyntheticSpec":
        if self.view_dims is None:
            self.view_dims = [2 * self.latent_dim] * self.V
        if len(self.view_dims) != self.V:
            raise ValueError(f"view_dims has {len(self.view_dims)} entries, expected V={self.V}")
        if any(d < 1 for d in self.view_dims):
            raise ValueError("every view dimension must be >= 1")
        if self.n < self.k_true:
            raise ValueError(f"n={self.n} must be >= k_true={self.k_true}")
        return self
