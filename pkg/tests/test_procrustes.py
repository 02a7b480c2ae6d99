import numpy as np
import pytest

from awmvc.errors import NumericalError
from awmvc.solver import nuclear_norm, procrustes_max_trace_rows, procrustes_with_scale

SHAPE_CLASSES = [(6, 2), (5, 5), (20, 3), (7, 1)]


def _feasible_traces(gen: np.random.Generator, A: np.ndarray, count: int) -> np.ndarray:
    """trace(R A) for ``count`` random row-orthonormal R of shape (n_cols, n_rows)."""
    n_rows, n_cols = A.shape
    q, _ = np.linalg.qr(gen.standard_normal((count, n_rows, n_cols)))
    R = np.transpose(q, (0, 2, 1))
    return np.einsum("bij,ji->b", R, A)


def _check_optimal(A: np.ndarray, gen: np.random.Generator) -> None:
    Q = procrustes_max_trace_rows(A)
    assert Q.shape == (A.shape[1], A.shape[0])
    assert np.linalg.norm(Q @ Q.T - np.eye(A.shape[1])) < 1e-10
    attained = np.trace(Q @ A)
    assert attained == pytest.approx(np.linalg.svd(A, compute_uv=False).sum(), abs=1e-10)
    assert np.all(_feasible_traces(gen, A, 1000) <= attained + 1e-10)


class TestProcrustesExamples:
    def test_identity(self):
        Q, scale = procrustes_with_scale(np.eye(3))
        np.testing.assert_allclose(Q, np.eye(3), atol=1e-12)
        assert scale == pytest.approx(3.0)

    def test_positive_diagonal(self):
        A = np.diag([2.0, 0.5])
        Q, scale = procrustes_with_scale(A)
        np.testing.assert_allclose(Q, np.eye(2), atol=1e-12)
        assert np.trace(Q @ A) == pytest.approx(2.5)
        assert scale == pytest.approx(nuclear_norm(A))

    def test_random_tall_matrix_dominates_sampled_points(self):
        gen = np.random.default_rng(42)
        _check_optimal(gen.standard_normal((6, 2)), gen)

    def test_orthonormal_columns_give_transpose(self):
        gen = np.random.default_rng(3)
        U, _ = np.linalg.qr(gen.standard_normal((8, 3)))
        np.testing.assert_allclose(procrustes_max_trace_rows(U), U.T, atol=1e-10)


class TestProcrustesErrors:
    def test_wide_matrix_rejected(self):
        with pytest.raises(ValueError):
            procrustes_max_trace_rows(np.ones((2, 3)))

    def test_non_matrix_rejected(self):
        with pytest.raises(ValueError):
            procrustes_max_trace_rows(np.ones(3))

    @pytest.mark.parametrize("bad", [np.nan, np.inf])
    def test_non_finite_rejected(self, bad):
        A = np.eye(3)
        A[1, 2] = bad
        with pytest.raises(NumericalError):
            procrustes_max_trace_rows(A)

    def test_rank_deficient_accepted(self):
        Q, scale = procrustes_with_scale(np.zeros((4, 2)))
        assert scale == 0.0
        np.testing.assert_allclose(Q @ Q.T, np.eye(2), atol=1e-12)


@pytest.mark.parametrize("shape", SHAPE_CLASSES)
def test_optimality_per_shape_class(shape):
    gen = np.random.default_rng(sum(shape))
    for _ in range(10):
        _check_optimal(gen.standard_normal(shape), gen)


@pytest.mark.slow
@pytest.mark.parametrize("shape", SHAPE_CLASSES)
def test_optimality_per_shape_class_full(shape):
    gen = np.random.default_rng(1000 + sum(shape))
    for _ in range(200):
        _check_optimal(gen.standard_normal(shape), gen)
