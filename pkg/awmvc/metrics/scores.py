"""
Clustering quality measures: ACC, NMI, Purity and pairwise Fscore.

All four are invariant to relabeling of clusters and of classes.
"""
from typing import Dict, Sequence

import numpy as np
from sklearn.metrics.cluster import normalized_mutual_info_score

from .contingency import check_label_pair, contingency_table
from .matching import hungarian_max

METRIC_VARIANTS = {
    "nmi": "sqrt",          # I / sqrt(H(pred) H(truth)), natural log
    "fscore": "pairwise",   # F-measure over all sample pairs
}


def acc(pred: Sequence, truth: Sequence) -> float:
    """Fraction of samples correctly labeled under the best one-to-one cluster-to-class matching."""
    table = contingency_table(pred, truth)
    pairs = hungarian_max(table.counts)
    matched = sum(int(table.counts[r, c]) for r, c in pairs)
    return matched / table.n


def nmi(pred: Sequence, truth: Sequence) -> float:
    """
    Mutual information normalized by the geometric mean of the entropies.

    Both partitions constant: 1.0. Exactly one constant: 0.0.
    """
    pred, truth = check_label_pair(pred, truth)
    score = normalized_mutual_info_score(truth, pred, average_method="geometric")
    return float(min(1.0, max(0.0, score)))


def purity(pred: Sequence, truth: Sequence) -> float:
    table = contingency_table(pred, truth)
    return int(table.counts.max(axis=1).sum()) / table.n


def _pairs(counts: np.ndarray) -> int:
    counts = np.asarray(counts, dtype=np.int64)
    return int((counts * (counts - 1) // 2).sum())


def fscore(pred: Sequence, truth: Sequence) -> float:
    """Pairwise F-measure; 0 when no pair shares both cluster and class."""
    table = contingency_table(pred, truth)
    tp = _pairs(table.counts)
    same_cluster = _pairs(table.cluster_sizes)
    same_class = _pairs(table.class_sizes)
    if tp == 0:
        return 0.0
    precision = tp / same_cluster
    recall = tp / same_class
    return 2.0 * precision * recall / (precision + recall)


def evaluate(pred: Sequence, truth: Sequence) -> Dict[str, float]:
    return {
        "acc": acc(pred, truth),
        "nmi": nmi(pred, truth),
        "purity": purity(pred, truth),
        "fscore": fscore(pred, truth),
    }


def as_percentages(scores: Dict[str, float]) -> Dict[str, float]:
    return {name: round(100.0 * value, 2) for name, value in scores.items()}
