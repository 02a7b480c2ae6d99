import itertools

import numpy as np
import pytest
from scipy.stats import entropy

from awmvc.errors import LabelError
from awmvc.metrics import (
    METRIC_VARIANTS,
    acc,
    as_percentages,
    contingency_table,
    evaluate,
    fscore,
    hungarian_max,
    nmi,
    purity,
)


def _brute_force_acc(pred, truth) -> float:
    _, p = np.unique(pred, return_inverse=True)
    _, t = np.unique(truth, return_inverse=True)
    size = max(p.max(), t.max()) + 1
    counts = np.zeros((size, size), dtype=int)
    np.add.at(counts, (p, t), 1)
    best = max(sum(counts[i, perm[i]] for i in range(size)) for perm in itertools.permutations(range(size)))
    return best / len(pred)


def _entropy_nmi(pred, truth) -> float:
    table = contingency_table(pred, truth)
    joint = table.counts / table.n
    p = joint.sum(axis=1)
    q = joint.sum(axis=0)
    rows, cols = np.nonzero(joint)
    mi = float(np.sum(joint[rows, cols] * np.log(joint[rows, cols] / (p[rows] * q[cols]))))
    return mi / np.sqrt(entropy(p) * entropy(q))


def _pair_enumeration_fscore(pred, truth) -> float:
    pred = np.asarray(pred)
    truth = np.asarray(truth)
    upper = np.triu(np.ones((pred.size, pred.size), dtype=bool), k=1)
    same_cluster = (pred[:, None] == pred[None, :]) & upper
    same_class = (truth[:, None] == truth[None, :]) & upper
    tp = int(np.sum(same_cluster & same_class))
    fp = int(np.sum(same_cluster & ~same_class))
    fn = int(np.sum(~same_cluster & same_class & upper))
    if tp == 0:
        return 0.0
    precision = tp / (tp + fp)
    recall = tp / (tp + fn)
    return 2 * precision * recall / (precision + recall)


class TestHungarian:
    def test_identity(self):
        assert hungarian_max(np.eye(3)) == [(0, 0), (1, 1), (2, 2)]

    def test_two_by_two(self):
        value = np.array([[1.0, 2.0], [3.0, 4.0]])
        pairs = hungarian_max(value)
        assert sum(value[r, c] for r, c in pairs) == 5.0

    def test_rectangular_returns_min_side_pairs(self):
        pairs = hungarian_max(np.array([[1.0, 5.0, 0.0], [4.0, 1.0, 2.0]]))
        assert pairs == [(0, 1), (1, 0)]

    def test_matches_exhaustive_oracle(self):
        gen = np.random.default_rng(0)
        for _ in range(200):
            value = gen.integers(0, 20, size=(5, 5)).astype(float)
            pairs = hungarian_max(value)
            total = sum(value[r, c] for r, c in pairs)
            oracle = max(sum(value[i, perm[i]] for i in range(5)) for perm in itertools.permutations(range(5)))
            assert total == oracle

    def test_non_finite_rejected(self):
        with pytest.raises(ValueError):
            hungarian_max(np.array([[np.nan]]))


class TestAcc:
    def test_identity(self):
        assert acc([0, 1, 2, 1], [0, 1, 2, 1]) == 1.0

    def test_relabeling_invariant(self):
        truth = [0, 0, 1, 1, 2, 2]
        assert acc([2, 2, 0, 0, 1, 1], truth) == 1.0

    def test_more_clusters_than_classes(self):
        assert acc([0, 0, 1, 1, 2, 2], [0, 0, 0, 1, 1, 1]) == pytest.approx(4 / 6)

    def test_matches_exhaustive_oracle(self):
        gen = np.random.default_rng(1)
        for _ in range(200):
            n = int(gen.integers(1, 40))
            pred = gen.integers(0, int(gen.integers(1, 7)), size=n)
            truth = gen.integers(0, int(gen.integers(1, 7)), size=n)
            assert acc(pred, truth) == pytest.approx(_brute_force_acc(pred, truth), abs=1e-12)

    def test_length_mismatch(self):
        with pytest.raises(LabelError):
            acc([0, 1], [0, 1, 1])

    def test_empty_input(self):
        with pytest.raises(LabelError):
            acc([], [])


class TestNmi:
    def test_identical_partitions(self):
        assert nmi([0, 0, 1, 1, 2], [0, 0, 1, 1, 2]) == pytest.approx(1.0, abs=1e-12)

    def test_independent_hand_example(self):
        assert nmi([0, 0, 1, 1], [0, 1, 0, 1]) == pytest.approx(0.0, abs=1e-12)

    def test_matches_entropy_definition(self):
        gen = np.random.default_rng(6)
        for _ in range(50):
            pred = gen.integers(0, 4, size=300)
            truth = gen.integers(0, 3, size=300)
            assert nmi(pred, truth) == pytest.approx(_entropy_nmi(pred, truth), abs=1e-12)

    def test_independent_large_sample(self):
        gen = np.random.default_rng(2)
        pred = gen.integers(0, 2, size=10000)
        truth = gen.integers(0, 3, size=10000)
        assert nmi(pred, truth) <= 0.05

    def test_symmetric(self):
        gen = np.random.default_rng(3)
        for _ in range(20):
            a = gen.integers(0, 4, size=50)
            b = gen.integers(0, 5, size=50)
            assert nmi(a, b) == pytest.approx(nmi(b, a), abs=1e-12)

    def test_constant_partitions(self):
        assert nmi([1, 1, 1], [4, 4, 4]) == 1.0
        assert nmi([0, 0, 0, 0], [0, 1, 0, 1]) == 0.0
        assert nmi([0, 1, 0, 1], [0, 0, 0, 0]) == 0.0

    def test_length_mismatch(self):
        with pytest.raises(LabelError):
            nmi([0], [0, 1])


class TestPurity:
    def test_identity(self):
        assert purity([3, 3, 1], [0, 0, 1]) == 1.0

    def test_single_cluster_balanced_truth(self):
        assert purity([0] * 12, [0, 1, 2, 3] * 3) == pytest.approx(0.25)

    def test_hand_example(self):
        assert purity([0, 0, 1, 1, 2, 2], [0, 0, 0, 1, 1, 1]) == pytest.approx(5 / 6)


class TestFscore:
    def test_identity(self):
        assert fscore([0, 0, 1, 1], [0, 0, 1, 1]) == 1.0

    def test_all_singletons(self):
        assert fscore([0, 1, 2, 3], [0, 0, 1, 1]) == 0.0

    def test_hand_example(self):
        assert fscore([0, 0, 1, 1], [0, 0, 0, 1]) == pytest.approx(0.4)

    def test_matches_pair_enumeration(self):
        gen = np.random.default_rng(4)
        for _ in range(20):
            n = int(gen.integers(2, 501))
            pred = gen.integers(0, 5, size=n)
            truth = gen.integers(0, 4, size=n)
            assert fscore(pred, truth) == pytest.approx(_pair_enumeration_fscore(pred, truth), abs=1e-12)


class TestAggregates:
    def test_contingency_orientation(self):
        table = contingency_table([0, 0, 1], [5, 7, 7])
        np.testing.assert_array_equal(table.counts, [[1, 1], [0, 1]])
        assert table.n == 3
        assert table.counts.sum() == table.n

    def test_relabeling_invariance_of_all_metrics(self):
        gen = np.random.default_rng(5)
        pred = gen.integers(0, 4, size=60)
        truth = gen.integers(0, 3, size=60)
        relabeled = np.array([3, 0, 2, 1])[pred]
        assert evaluate(relabeled, truth) == pytest.approx(evaluate(pred, truth), abs=1e-12)

    def test_percentages(self):
        scores = evaluate([0, 0, 1, 1], [0, 0, 0, 1])
        assert as_percentages(scores)["fscore"] == 40.0
        assert set(scores) == {"acc", "nmi", "purity", "fscore"}

    def test_variants_are_named(self):
        assert METRIC_VARIANTS == {"nmi": "sqrt", "fscore": "pairwise"}
