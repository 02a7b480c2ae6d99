from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Literal, Optional

import numpy as np
from pydantic import BaseModel, Field, model_validator

from ..errors import ConfigError

AlphaRule = Literal["paper", "kkt"]


class Variant(str, Enum):
    """Solver variants: the full model and the two ablations."""
    FULL = "full"                # m embeddings of dimensions k..mk, learned alpha
    FIXED_DIM = "fixed-dim"      # single embedding with d = k
    EQUAL_ALPHA = "equal-alpha"  # alpha frozen at 1/m


class SolverConfig(BaseModel):
    k: int = Field(..., ge=1, description="Number of clusters.")
    m: int = Field(3, ge=1, description="Number of embeddings.")
    dims: Optional[List[int]] = Field(None, description="Embedding dimensions d_p; defaults to k, 2k, ..., mk.")
    max_iter: int = Field(50, ge=1, description="Maximum number of sweeps.")
    tol: float = Field(1e-6, gt=0.0, description="Relative objective-change stopping threshold.")
    seed: int = Field(0, ge=0, description="Initialization seed.")
    variant: Variant = Field(Variant.FULL, description="full | fixed-dim | equal-alpha")
    alpha_rule: AlphaRule = Field("paper", description="paper: alpha ~ 1/r; kkt: alpha ~ 1/r^2")
    eps: float = Field(1e-12, gt=0.0, description="Residuals at or below eps count as zero.")

    @model_validator(mode="after")
    def _resolve_dims(self) -> "SolverConfig":
        if self.variant == Variant.FIXED_DIM:
            self.m = 1
            self.dims = [self.k]
        elif self.dims is None:
            self.dims = [self.k * (p + 1) for p in range(self.m)]
        if len(self.dims) != self.m:
            raise ValueError(f"dims has {len(self.dims)} entries but m={self.m}")
        for d in self.dims:
            if d < self.k:
                raise ValueError(f"embedding dimension {d} is smaller than k={self.k}")
        return self

    def check_against(self, n: int) -> None:
        """Raise ConfigError unless k <= n and every d_p <= n."""
        if self.k > n:
            raise ConfigError(f"k={self.k} exceeds the number of samples n={n}")
        too_big = [d for d in self.dims if d > n]
        if too_big:
            raise ConfigError(f"embedding dimensions {too_big} exceed the number of samples n={n}")


@dataclass
class SolverState:
    """
    All optimization variables.

    H[p][v] is d_v x d_p, Z[p] is d_p x n, W[p] is d_p x k and M is k x n.
    H and M stay unset after initialization; the first sweep fills them
    before they are read.
    """
    Z: List[np.ndarray]
    W: List[np.ndarray]
    alpha: np.ndarray
    beta: np.ndarray
    H: Optional[List[List[np.ndarray]]] = None
    M: Optional[np.ndarray] = None
    degenerate_steps: List[str] = field(default_factory=list)

    @property
    def m(self) -> int:
        return len(self.Z)

    @property
    def dims(self) -> List[int]:
        return [int(z.shape[0]) for z in self.Z]

    def copy(self) -> "SolverState":
        return SolverState(
            Z=[z.copy() for z in self.Z],
            W=[w.copy() for w in self.W],
            alpha=self.alpha.copy(),
            beta=self.beta.copy(),
            H=[[h.copy() for h in row] for row in self.H] if self.H is not None else None,
            M=self.M.copy() if self.M is not None else None,
            degenerate_steps=list(self.degenerate_steps),
        )


@dataclass(frozen=True)
class IterationSnapshot:
    """Handed to ``fit(on_iteration=...)`` after every sweep."""
    iteration: int
    objective: float
    alpha: np.ndarray
    beta: np.ndarray
    M: np.ndarray


@dataclass
class FitReport:
    objective_trace: List[float]
    alpha_history: List[List[float]]
    beta_history: List[List[float]]
    alpha_final: np.ndarray
    beta_final: np.ndarray
    iterations: int
    converged: bool
    per_step_seconds: Dict[str, float]
    per_step_stats: Dict[str, Dict[str, float]]
    M: np.ndarray
    lower_bound: float
    dims: List[int]
    variant: str
    alpha_rule: str
    monotonicity_violations: List[int] = field(default_factory=list)
    degenerate_steps: List[str] = field(default_factory=list)

    @property
    def dimension_weights(self) -> Dict[str, List[float]]:
        """Per-embedding weights in the three readings: alpha, alpha squared, beta."""
        return {
            "alpha": self.alpha_final.tolist(),
            "alpha_squared": (self.alpha_final ** 2).tolist(),
            "beta": self.beta_final.tolist(),
        }

    def to_dict(self, include_matrix: bool = False) -> Dict[str, Any]:
        """JSON-ready view without the timing fields."""
        data: Dict[str, Any] = {
            "iterations": self.iterations,
            "converged": self.converged,
            "objective_trace": list(self.objective_trace),
            "lower_bound": self.lower_bound,
            "alpha_final": self.alpha_final.tolist(),
            "beta_final": self.beta_final.tolist(),
            "alpha_history": self.alpha_history,
            "beta_history": self.beta_history,
            "dimension_weights": self.dimension_weights,
            "dims": list(self.dims),
            "variant": self.variant,
            "alpha_rule": self.alpha_rule,
            "monotonicity_violations": list(self.monotonicity_violations),
            "degenerate_steps": list(self.degenerate_steps),
            "M_shape": list(self.M.shape),
        }
        if include_matrix:
            data["M"] = self.M.tolist()
        return data
