from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, Optional, Tuple

import numpy as np

from ..config.settings import settings
from ..dataset.types import MultiViewDataset
from ..errors import NumericalError
from ..telemetry import StepTimer
from .types import FitReport, IterationSnapshot, SolverConfig, SolverState, Variant
from .updates import (
    init_state,
    objective,
    objective_lower_bound,
    update_H,
    update_M,
    update_W,
    update_Z,
    update_alpha,
    update_beta,
)

logger = logging.getLogger(__name__)

OnIterationCallback = Callable[[IterationSnapshot], None]

MONOTONICITY_SLACK = 1e-8

# Sweep order is fixed: H, M, W, Z, alpha, beta.
STEP_NAMES = ("update_H", "update_M", "update_W", "update_Z", "update_alpha", "update_beta", "objective")


class AWMVCSolver:
    """
    Alternating optimizer for the auto-weighted multi-dimension
    factorization objective.

    Usage:
        solver = AWMVCSolver(SolverConfig(k=5))
        state, report = solver.fit(dataset)
        labels = kmeans(report.M, KMeansConfig(k=5)).labels
    """

    def __init__(self, config: SolverConfig, threads: Optional[int] = None):
        self.config = config
        self.threads = threads if threads is not None else settings.THREADS
        self.timer = StepTimer()

    def _sweep(self, state: SolverState, ds: MultiViewDataset, executor) -> float:
        cfg = self.config
        with self.timer.step("update_H"):
            state.H = update_H(state, ds, executor)
        with self.timer.step("update_M"):
            state.M = update_M(state)
        with self.timer.step("update_W"):
            state.W = update_W(state, executor)
        with self.timer.step("update_Z"):
            state.Z = update_Z(state, ds, executor)
        if cfg.variant != Variant.EQUAL_ALPHA:
            with self.timer.step("update_alpha"):
                state.alpha = update_alpha(state, ds, rule=cfg.alpha_rule, eps=cfg.eps, executor=executor)
        with self.timer.step("update_beta"):
            state.beta = update_beta(state)
        with self.timer.step("objective"):
            return objective(state, ds, executor)

    def fit(
        self,
        ds: MultiViewDataset,
        on_iteration: Optional[OnIterationCallback] = None,
    ) -> Tuple[SolverState, FitReport]:
        cfg = self.config
        cfg.check_against(ds.n)
        self.timer.reset()

        rng = np.random.default_rng(cfg.seed)
        with self.timer.step("init"):
            state = init_state(cfg, ds, rng)

        trace: List[float] = []
        alpha_history: List[List[float]] = []
        beta_history: List[List[float]] = []
        violations: List[int] = []
        converged = False

        executor = ThreadPoolExecutor(max_workers=self.threads) if self.threads > 1 and cfg.m > 1 else None
        try:
            for t in range(1, cfg.max_iter + 1):
                obj = self._sweep(state, ds, executor)
                if not np.isfinite(obj):
                    raise NumericalError(
                        f"objective became non-finite at iteration {t} (alpha={state.alpha.tolist()}, beta={state.beta.tolist()})"
                    )
                trace.append(obj)
                alpha_history.append(state.alpha.tolist())
                beta_history.append(state.beta.tolist())
                logger.debug(
                    f"[Solver] iter={t} objective={obj:.10g} alpha={np.round(state.alpha, 6).tolist()} beta={np.round(state.beta, 6).tolist()}"
                )

                if on_iteration is not None:
                    on_iteration(IterationSnapshot(
                        iteration=t,
                        objective=obj,
                        alpha=state.alpha.copy(),
                        beta=state.beta.copy(),
                        M=state.M.copy(),
                    ))

                if t > 1:
                    prev = trace[-2]
                    if obj > prev + MONOTONICITY_SLACK:
                        violations.append(t)
                        logger.warning(
                            f"[Solver] objective rose at iteration {t}: {prev:.10g} -> {obj:.10g} (alpha_rule={cfg.alpha_rule})"
                        )
                    if abs(prev - obj) <= cfg.tol * (1.0 + abs(obj)):
                        converged = True
                        break
        finally:
            if executor is not None:
                executor.shutdown(wait=True)

        report = FitReport(
            objective_trace=trace,
            alpha_history=alpha_history,
            beta_history=beta_history,
            alpha_final=state.alpha.copy(),
            beta_final=state.beta.copy(),
            iterations=len(trace),
            converged=converged,
            per_step_seconds=self.timer.cumulative_seconds(),
            per_step_stats=self.timer.summary(),
            M=state.M.copy(),
            lower_bound=objective_lower_bound(cfg.k, cfg.dims),
            dims=list(cfg.dims),
            variant=cfg.variant.value,
            alpha_rule=cfg.alpha_rule,
            monotonicity_violations=violations,
            degenerate_steps=list(state.degenerate_steps),
        )
        logger.info(
            f"[Solver] {'converged' if converged else 'stopped'} after {report.iterations} iterations, "
            f"objective={trace[-1]:.10g}, beta={np.round(state.beta, 4).tolist()}"
        )
        return state, report


def fit(
    config: SolverConfig,
    ds: MultiViewDataset,
    on_iteration: Optional[OnIterationCallback] = None,
    threads: Optional[int] = None,
) -> Tuple[SolverState, FitReport]:
    """Run the optimizer to convergence or ``config.max_iter`` sweeps."""
    return AWMVCSolver(config, threads=threads).fit(ds, on_iteration=on_iteration)
