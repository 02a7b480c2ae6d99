"""Shared fixtures for the awmvc test suite."""
from typing import Optional, Sequence

import numpy as np
import pytest

from awmvc.dataset import MultiViewDataset, SyntheticSpec, from_arrays, generate_synthetic
from awmvc.solver import SolverConfig, SolverState, init_state


@pytest.fixture
def rng():
    return np.random.default_rng(0)


@pytest.fixture
def make_dataset():
    """Factory for random Gaussian multi-view datasets with round-robin labels."""

    def _make(
        seed: int = 0,
        n: int = 30,
        view_dims: Sequence[int] = (5, 4),
        k: Optional[int] = 3,
    ) -> MultiViewDataset:
        gen = np.random.default_rng(seed)
        views = [gen.standard_normal((d, n)) for d in view_dims]
        labels = np.arange(n) % k if k else None
        return from_arrays(views, labels=labels, name=f"random-{seed}")

    return _make


@pytest.fixture
def row_orthonormal():
    """Factory for seeded random matrices with orthonormal rows (rows <= cols)."""

    def _make(gen: np.random.Generator, rows: int, cols: int) -> np.ndarray:
        q, _ = np.linalg.qr(gen.standard_normal((cols, rows)))
        return q.T

    return _make


@pytest.fixture
def initial_state():
    """Factory returning (config, state) right after init_state."""

    def _make(ds: MultiViewDataset, k: int = 2, m: int = 2, seed: int = 0, **overrides):
        config = SolverConfig(k=k, m=m, seed=seed, **overrides)
        state = init_state(config, ds, np.random.default_rng(seed))
        return config, state

    return _make


@pytest.fixture(scope="session")
def separable_spec() -> SyntheticSpec:
    return SyntheticSpec(
        n=300,
        V=3,
        k_true=5,
        latent_dim=20,
        view_dims=[50, 40, 30],
        noise_sigma=0.1,
        center_spread=5.0,
        seed=0,
    )


@pytest.fixture(scope="session")
def separable_ds(separable_spec) -> MultiViewDataset:
    return generate_synthetic(separable_spec)


@pytest.fixture(scope="session")
def quiet_ds() -> MultiViewDataset:
    """Near-noiseless clusters: the optimizer settles within a few sweeps."""
    return generate_synthetic(SyntheticSpec(n=200, V=2, k_true=4, latent_dim=8, noise_sigma=1e-4, seed=5))


def assert_feasible(state: SolverState, tol: float = 1e-8) -> None:
    for z in state.Z:
        assert np.linalg.norm(z @ z.T - np.eye(z.shape[0])) < tol
    for w in state.W:
        assert np.linalg.norm(w.T @ w - np.eye(w.shape[1])) < tol
    if state.M is not None:
        assert np.linalg.norm(state.M @ state.M.T - np.eye(state.M.shape[0])) < tol
    assert np.all(state.alpha >= 0)
    assert abs(state.alpha.sum() - 1.0) < 1e-12
    assert np.all(state.beta >= 0)
    assert abs(np.dot(state.beta, state.beta) - 1.0) < 1e-12


@pytest.fixture
def check_feasible():
    return assert_feasible
