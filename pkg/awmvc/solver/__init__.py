from .types import FitReport, IterationSnapshot, SolverConfig, SolverState, Variant
from .procrustes import nuclear_norm, procrustes_max_trace_rows, procrustes_with_scale
from .updates import (
    alignment_scores,
    alpha_from_residuals,
    beta_from_theta,
    constraint_violations,
    init_state,
    objective,
    objective_lower_bound,
    residuals,
    update_H,
    update_M,
    update_W,
    update_Z,
    update_alpha,
    update_beta,
)
from .engine import AWMVCSolver, STEP_NAMES, fit

__all__ = [
    "FitReport",
    "IterationSnapshot",
    "SolverConfig",
    "SolverState",
    "Variant",
    "nuclear_norm",
    "procrustes_max_trace_rows",
    "procrustes_with_scale",
    "alignment_scores",
    "alpha_from_residuals",
    "beta_from_theta",
    "constraint_violations",
    "init_state",
    "objective",
    "objective_lower_bound",
    "residuals",
    "update_H",
    "update_M",
    "update_W",
    "update_Z",
    "update_alpha",
    "update_beta",
    "AWMVCSolver",
    "STEP_NAMES",
    "fit",
]
