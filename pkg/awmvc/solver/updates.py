"""
Closed-form block updates of the alternating optimizer, plus the
objective they jointly decrease.

Every update returns the new value of its block and leaves ``state``
untouched (except for appending to ``state.degenerate_steps``); the fit
loop does the assignment. The p-indexed work can be spread over an
executor: results are collected in p order and every sum is reduced
sequentially, so threaded and sequential runs agree bit for bit.
"""
from __future__ import annotations

import logging
from concurrent.futures import Executor
from typing import Callable, List, Optional, Sequence, TypeVar

import numpy as np
from scipy import linalg

from ..dataset.types import MultiViewDataset
from .procrustes import procrustes_max_trace_rows, procrustes_with_scale
from .types import SolverConfig, SolverState

logger = logging.getLogger(__name__)

T = TypeVar("T")

DEGENERACY_EPS = 1e-12


def _pmap(fn: Callable[[int], T], m: int, executor: Optional[Executor] = None) -> List[T]:
    if executor is None or m == 1:
        return [fn(p) for p in range(m)]
    return list(executor.map(fn, range(m)))


def _require(state: SolverState, *names: str) -> None:
    missing = [name for name in names if getattr(state, name) is None]
    if missing:
        raise ValueError(f"state has no value for {', '.join(missing)} yet")


def init_state(config: SolverConfig, ds: MultiViewDataset, rng: np.random.Generator) -> SolverState:
    """
    Random feasible starting point: Gaussian matrices orthonormalized by
    thin QR, alpha = 1/m and beta = 1/sqrt(m). H and M stay unset.
    """
    config.check_against(ds.n)
    Z, W = [], []
    for d_p in config.dims:
        gaussian = rng.standard_normal((d_p, ds.n))
        q, _ = linalg.qr(gaussian.T, mode="economic")
        Z.append(np.ascontiguousarray(q.T))
        q, _ = linalg.qr(rng.standard_normal((d_p, config.k)), mode="economic")
        W.append(q)
    m = config.m
    return SolverState(
        Z=Z,
        W=W,
        alpha=np.full(m, 1.0 / m),
        beta=np.full(m, 1.0 / np.sqrt(m)),
    )


def update_H(state: SolverState, ds: MultiViewDataset, executor: Optional[Executor] = None) -> List[List[np.ndarray]]:
    """H_p^(v) = X^(v) Z_p^T, the unconstrained least-squares minimizer for row-orthonormal Z_p."""
    views = ds.matrices()

    def one(p: int) -> List[np.ndarray]:
        zt = state.Z[p].T
        return [X @ zt for X in views]

    return _pmap(one, state.m, executor)


def update_M(state: SolverState, eps: float = DEGENERACY_EPS) -> np.ndarray:
    """M = Procrustes(sum_p beta_p Z_p^T W_p), a k x n row-orthonormal matrix."""
    A = None
    for p in range(state.m):
        term = state.beta[p] * (state.Z[p].T @ state.W[p])
        A = term if A is None else A + term
    M, scale = procrustes_with_scale(A)
    if scale <= eps:
        logger.warning("[Solver] M-step input is numerically zero; returning an arbitrary orthonormal M")
        state.degenerate_steps.append("update_M")
    return M


def update_W(state: SolverState, executor: Optional[Executor] = None) -> List[np.ndarray]:
    """W_p = Procrustes(Z_p M^T)^T, so W_p^T W_p = I_k and trace(W_p^T Z_p M^T) is maximal."""
    _require(state, "M")
    mt = state.M.T

    def one(p: int) -> np.ndarray:
        return np.ascontiguousarray(procrustes_max_trace_rows(state.Z[p] @ mt).T)

    return _pmap(one, state.m, executor)


def update_Z(state: SolverState, ds: MultiViewDataset, executor: Optional[Executor] = None) -> List[np.ndarray]:
    """Z_p = Procrustes(alpha_p^2 sum_v X^(v)T H_p^(v) + beta_p M^T W_p^T)."""
    _require(state, "H", "M")
    views = ds.matrices()
    mt = state.M.T

    def one(p: int) -> np.ndarray:
        data_term = None
        for X, H in zip(views, state.H[p]):
            term = X.T @ H
            data_term = term if data_term is None else data_term + term
        B = state.alpha[p] ** 2 * data_term + state.beta[p] * (mt @ state.W[p].T)
        return procrustes_max_trace_rows(B)

    return _pmap(one, state.m, executor)


def residuals(state: SolverState, ds: MultiViewDataset, executor: Optional[Executor] = None) -> np.ndarray:
    """r_p^2 = sum_v ||X^(v) - H_p^(v) Z_p||_F^2 for every p."""
    _require(state, "H")
    views = ds.matrices()

    def one(p: int) -> float:
        total = 0.0
        for X, H in zip(views, state.H[p]):
            diff = X - H @ state.Z[p]
            total += float(np.vdot(diff, diff))
        return total

    return np.asarray(_pmap(one, state.m, executor), dtype=np.float64)


def alpha_from_residuals(r: Sequence[float], rule: str = "paper", eps: float = 1e-12) -> np.ndarray:
    """
    Simplex weights from per-embedding residual norms r_p.

    ``paper`` gives alpha_p proportional to 1/r_p; ``kkt`` gives 1/r_p^2,
    the exact minimizer of sum_p alpha_p^2 r_p^2 on the simplex. Residuals
    at or below ``eps`` take all the weight, split uniformly.
    """
    r = np.asarray(r, dtype=np.float64)
    zero = r <= eps
    if np.any(zero):
        logger.warning(f"[Solver] {int(zero.sum())} embedding(s) fit the data exactly; alpha concentrates on them")
        return zero.astype(np.float64) / zero.sum()
    if rule == "paper":
        inv = 1.0 / r
    elif rule == "kkt":
        inv = 1.0 / (r * r)
    else:
        raise ValueError(f"unknown alpha rule {rule!r}")
    return inv / inv.sum()


def update_alpha(
    state: SolverState,
    ds: MultiViewDataset,
    rule: str = "paper",
    eps: float = 1e-12,
    executor: Optional[Executor] = None,
) -> np.ndarray:
    return alpha_from_residuals(np.sqrt(residuals(state, ds, executor)), rule=rule, eps=eps)


def alignment_scores(state: SolverState) -> np.ndarray:
    """theta_p = trace(Z_p^T W_p M)."""
    _require(state, "M")
    return np.asarray(
        [float(np.vdot(state.Z[p], state.W[p] @ state.M)) for p in range(state.m)],
        dtype=np.float64,
    )


def beta_from_theta(theta: Sequence[float]) -> np.ndarray:
    """Unit-norm nonnegative maximizer of sum_p beta_p theta_p (negative theta clamped)."""
    theta = np.clip(np.asarray(theta, dtype=np.float64), 0.0, None)
    norm = float(np.linalg.norm(theta))
    if norm == 0.0:
        return np.full(theta.size, 1.0 / np.sqrt(theta.size))
    return theta / norm


def update_beta(state: SolverState) -> np.ndarray:
    return beta_from_theta(alignment_scores(state))


def objective(state: SolverState, ds: MultiViewDataset, executor: Optional[Executor] = None) -> float:
    """sum_p 1/2 alpha_p^2 r_p^2 - sum_p beta_p trace(Z_p^T W_p M)."""
    r2 = residuals(state, ds, executor)
    theta = alignment_scores(state)
    return float(0.5 * np.dot(state.alpha ** 2, r2) - np.dot(state.beta, theta))


def objective_lower_bound(k: int, dims: Sequence[int]) -> float:
    return -float(sum(k * np.sqrt(d) for d in dims))


def constraint_violations(state: SolverState) -> dict:
    """Largest deviation of each constraint from feasibility."""
    def frob(a: np.ndarray) -> float:
        return float(np.linalg.norm(a - np.eye(a.shape[0])))

    out = {
        "ZZt": max(frob(z @ z.T) for z in state.Z),
        "WtW": max(frob(w.T @ w) for w in state.W),
        "alpha_simplex": abs(float(state.alpha.sum()) - 1.0),
        "alpha_negative": float(max(0.0, -state.alpha.min())),
        "beta_sphere": abs(float(np.dot(state.beta, state.beta)) - 1.0),
        "beta_negative": float(max(0.0, -state.beta.min())),
    }
    if state.M is not None:
        out["MMt"] = frob(state.M @ state.M.T)
    return out
