from typing import Optional, Sequence

import numpy as np
from sklearn.preprocessing import normalize

from ..errors import DatasetValidationError
from .types import MultiViewDataset, ViewMatrix, remap_labels

NORMALIZE_MODES = ("none", "per-sample-l2")


def from_arrays(
    views: Sequence[np.ndarray],
    labels: Optional[Sequence] = None,
    name: str = "dataset",
    view_names: Optional[Sequence[str]] = None,
    samples_as_rows: bool = False,
) -> MultiViewDataset:
    """
    Build a dataset from in-memory matrices.

    Matrices are d_v x n unless ``samples_as_rows`` is set, in which case
    they are n x d_v (the usual scikit-learn orientation) and get transposed.
    Labels of any alphabet are remapped to 0..k-1.
    """
    if view_names is not None and len(view_names) != len(views):
        raise DatasetValidationError(f"got {len(view_names)} view names for {len(views)} views")
    matrices = []
    for index, matrix in enumerate(views):
        matrix = np.asarray(matrix, dtype=np.float64)
        if matrix.ndim != 2:
            raise DatasetValidationError(f"view {index} must be 2-D, got shape {matrix.shape}")
        matrices.append(matrix.T if samples_as_rows else matrix)

    names = list(view_names) if view_names is not None else [f"view{i}" for i in range(len(matrices))]
    mapped = remap_labels(labels) if labels is not None else None
    return MultiViewDataset(
        views=tuple(ViewMatrix(name=nm, data=m) for nm, m in zip(names, matrices)),
        labels=mapped,
        name=name,
    )


def normalize_views(ds: MultiViewDataset, mode: str = "none") -> MultiViewDataset:
    """Scale each sample (column) of every view to unit L2 norm; zero columns stay zero."""
    if mode == "none":
        return ds
    if mode != "per-sample-l2":
        raise DatasetValidationError(f"unknown normalization {mode!r}; expected one of {NORMALIZE_MODES}")
    views = tuple(
        ViewMatrix(name=view.name, data=normalize(view.data, norm="l2", axis=0))
        for view in ds.views
    )
    return MultiViewDataset(views=views, labels=ds.labels, name=ds.name)
