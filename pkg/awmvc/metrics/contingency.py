from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np
from sklearn.metrics.cluster import contingency_matrix

from ..errors import LabelError


def check_label_pair(pred: Sequence, truth: Sequence) -> Tuple[np.ndarray, np.ndarray]:
    pred = np.asarray(pred)
    truth = np.asarray(truth)
    if pred.ndim != 1 or truth.ndim != 1:
        raise LabelError("labels must be 1-D vectors")
    if pred.shape[0] != truth.shape[0]:
        raise LabelError(f"label length mismatch: pred has {pred.shape[0]}, truth has {truth.shape[0]}")
    if pred.shape[0] == 0:
        raise LabelError("labels are empty")
    return pred, truth


@dataclass(frozen=True, eq=False)
class ContingencyTable:
    """counts[i, j] = number of samples in predicted cluster i and true class j."""
    counts: np.ndarray
    n: int

    @property
    def cluster_sizes(self) -> np.ndarray:
        return self.counts.sum(axis=1)

    @property
    def class_sizes(self) -> np.ndarray:
        return self.counts.sum(axis=0)


def contingency_table(pred: Sequence, truth: Sequence) -> ContingencyTable:
    pred, truth = check_label_pair(pred, truth)
    # sklearn orders rows by class, columns by cluster
    counts = contingency_matrix(truth, pred).T.astype(np.int64)
    return ContingencyTable(counts=counts, n=int(pred.shape[0]))
