__version__ = "0.1.0"

from .dataset import MultiViewDataset, SyntheticSpec, ViewMatrix, generate_synthetic, load_dataset, save_dataset
from .solver import AWMVCSolver, FitReport, SolverConfig, Variant, fit
from .clustering import Assignment, KMeansConfig, kmeans
from .metrics import evaluate
from .telemetry import StepTimer

__all__ = [
    "MultiViewDataset",
    "SyntheticSpec",
    "ViewMatrix",
    "generate_synthetic",
    "load_dataset",
    "save_dataset",
    "AWMVCSolver",
    "FitReport",
    "SolverConfig",
    "Variant",
    "fit",
    "Assignment",
    "KMeansConfig",
    "kmeans",
    "evaluate",
    "StepTimer",
]
